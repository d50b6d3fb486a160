// Command-line surface over the wtheta library: lattice info, theta
// evaluation, S-transform checks, characters, quantum dimensions, sweeps,
// and the self-verification suite.

#include "wtheta/acceptance.hpp"
#include "wtheta/qdim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace wtheta;

namespace {

enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kPrecondition = 3,
  kNumeric = 4,
  kVerification = 5,
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

CVec parse_complex_list(const std::string& s) {
  auto parts = split(s, ',');
  CVec v(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v[static_cast<int>(i)] = parse_complex(parts[i]);
  return v;
}

IntVec parse_int_list(const std::string& s) {
  auto parts = split(s, ',');
  IntVec v(static_cast<int>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::size_t pos = 0;
    v[static_cast<int>(i)] = std::stoi(parts[i], &pos);
    if (pos != parts[i].size())
      throw PreconditionError("bad integer list entry: " + parts[i]);
  }
  return v;
}

// "A2", "D4", "E6"
RootSystem parse_type(const std::string& s) {
  if (s.size() < 2) throw PreconditionError("type must look like A2, D4, E6");
  Family f = parse_family(s.substr(0, 1));
  int rank = std::stoi(s.substr(1));
  return build_root_system(f, rank);
}

// rows separated by ';', entries by ','
IntMat parse_int_matrix(const std::string& s) {
  auto rows = split(s, ';');
  int n = static_cast<int>(rows.size());
  IntMat M(n, n);
  for (int i = 0; i < n; ++i) {
    IntVec r = parse_int_list(rows[i]);
    if (r.size() != n) throw PreconditionError("gram matrix must be square");
    for (int j = 0; j < n; ++j) M(i, j) = r[j];
  }
  return M;
}

Eigen::MatrixXd parse_double_matrix(const std::string& s) {
  auto rows = split(s, ';');
  int n = static_cast<int>(rows.size());
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    auto entries = split(rows[i], ',');
    if (static_cast<int>(entries.size()) != n)
      throw PreconditionError("matrix must be square");
    for (int j = 0; j < n; ++j) M(i, j) = std::stod(entries[j]);
  }
  return M;
}

json cvec_json(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back({{"re", v[i].real()}, {"im", v[i].imag()}});
  return a;
}

json ivec_json(const IntVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json series_json(const QExpansion& f) {
  json terms = json::array();
  if (f.mode() == CoefMode::Exact) {
    for (const auto& [e, c] : f.exact_terms()) {
      Complex z(to_double(c), 0.0);
      terms.push_back({{"exponent", rat_str(e)},
                       {"coeff_re", z.real()},
                       {"coeff_im", z.imag()}});
    }
  } else {
    for (const auto& [e, c] : f.numeric_terms())
      terms.push_back({{"exponent", rat_str(e)},
                       {"coeff_re", c.real()},
                       {"coeff_im", c.imag()}});
  }
  return json{{"mode", f.mode() == CoefMode::Exact ? "exact" : "numeric"},
              {"terms", terms},
              {"eta_power", f.eta_power},
              {"exp_offset", f.exp_offset},
              {"cap", rat_str(f.cap())}};
}

void emit_pretty(const json& j, std::ostream& out, int indent) {
  std::string pad(indent, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << pad << k << ":\n";
      emit_pretty(v, out, indent + 2);
    } else {
      out << pad << k << " = " << v.dump() << "\n";
    }
  }
}

void emit_csv(const json& j, std::ostream& out) {
  // flatten primitives and primitive arrays; nested objects use dotted keys
  std::vector<std::pair<std::string, std::string>> cells;
  std::function<void(const json&, const std::string&)> walk =
      [&](const json& node, const std::string& prefix) {
        for (const auto& [k, v] : node.items()) {
          std::string key = prefix.empty() ? k : prefix + "." + k;
          if (v.is_object()) {
            walk(v, key);
          } else if (v.is_array()) {
            std::string joined;
            for (const auto& e : v) {
              if (!joined.empty()) joined += ";";
              joined += e.is_string() ? e.get<std::string>() : e.dump();
            }
            cells.emplace_back(key, joined);
          } else if (v.is_string()) {
            cells.emplace_back(key, v.get<std::string>());
          } else {
            cells.emplace_back(key, v.dump());
          }
        }
      };
  walk(j, "");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out << cells[i].first << (i + 1 < cells.size() ? "," : "\n");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out << cells[i].second << (i + 1 < cells.size() ? "," : "\n");
}

void emit(const json& j, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else if (format == "csv")
    emit_csv(j, std::cout);
  else
    emit_pretty(j, std::cout, 0);
}

struct LatticeSpec {
  std::string type;  // e.g. "A2"; empty when --gram is used
  int p = 0;
  std::string gram;

  // rs_out keeps the root system alive for QuadLattice::rescaled
  QuadLattice build(std::unique_ptr<RootSystem>& rs_out) const {
    if (!gram.empty()) return QuadLattice::from_matrix(parse_int_matrix(gram));
    if (type.empty())
      throw PreconditionError("need --type with --p, or --gram");
    rs_out = std::make_unique<RootSystem>(parse_type(type));
    return QuadLattice::rescaled(*rs_out, p > 0 ? p : 1);
  }
};

int cmd_root_info(const std::string& type_s, int rank,
                  const std::string& format) {
  RootSystem rs = build_root_system(parse_family(type_s), rank);
  std::size_t worder = weyl_group(rs).size();
  json cartan = json::array();
  for (int i = 0; i < rs.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < rs.rank; ++j) row.push_back(rs.cartan(i, j));
    cartan.push_back(row);
  }
  json rho = json::array();
  for (int i = 0; i < rs.rank; ++i) rho.push_back(rat_str(rs.rho_alpha[i]));
  json j{{"command", "root-info"},
         {"type", family_name(rs.family) + std::to_string(rs.rank)},
         {"rank", rs.rank},
         {"num_positive_roots", rs.num_positive_roots()},
         {"weyl_order", worder},
         {"cartan", cartan},
         {"rho_alpha", rho}};
  emit(j, format);
  return kOk;
}

int cmd_kostant(const std::string& type_s, int rank, const std::string& beta_s,
                const std::string& format) {
  RootSystem rs = build_root_system(parse_family(type_s), rank);
  IntVec beta = parse_int_list(beta_s);
  if (beta.size() != rs.rank) throw PreconditionError("beta length != rank");
  Int v = kostant_partition(rs, beta);
  json j{{"command", "kostant"},
         {"type", family_name(rs.family) + std::to_string(rs.rank)},
         {"beta", ivec_json(beta)},
         {"value", v.str()}};
  emit(j, format);
  return kOk;
}

int cmd_theta_eval(const std::string& kind, const LatticeSpec& lat,
                   const std::string& u_s, const std::string& eps_s,
                   const std::string& tau_s, const std::string& offset_s,
                   const std::string& signs_s, const std::string& bmat_s,
                   double tol, const std::string& format) {
  CVec u = parse_complex_list(u_s);
  CVec e = parse_complex_list(eps_s);
  Complex tau = parse_complex(tau_s);
  NumericResult r;
  if (kind == "partial") {
    std::unique_ptr<RootSystem> rs;
    QuadLattice L = lat.build(rs);
    RegEps eps = RegEps::make(e);
    if (!offset_s.empty()) {
      IntVec off = parse_int_list(offset_s);
      r = partial_theta_eval(L, u, eps, tau, tol, &off);
    } else {
      r = partial_theta_eval(L, u, eps, tau, tol);
    }
  } else if (kind == "kostant") {
    if (lat.type.empty() || lat.p <= 0)
      throw PreconditionError("kostant theta needs --type and --p");
    RootSystem rs = parse_type(lat.type);
    RegEps eps = RegEps::make(e, rs);
    r = kostant_theta_eval(rs, lat.p, u, eps, tau, tol);
  } else if (kind == "modified") {
    if (bmat_s.empty()) throw PreconditionError("modified theta needs --B");
    Eigen::MatrixXd B = parse_double_matrix(bmat_s);
    if (!signs_s.empty()) {
      IntVec s = parse_int_list(signs_s);
      r = theta_B_eval(B, u, e, tau, tol, &s);
    } else {
      r = theta_B_eval(B, u, e, tau, tol);
    }
  } else {
    throw PreconditionError("kind must be partial|kostant|modified");
  }
  json j{{"command", "theta-eval"},
         {"kind", kind},
         {"value_re", r.value.real()},
         {"value_im", r.value.imag()},
         {"error_bound", r.error_bound}};
  emit(j, format);
  return kOk;
}

int cmd_s_check(const std::string& kind, const LatticeSpec& lat,
                const std::string& u_s, const std::string& eps_s,
                const std::string& tau_s, double tol, double check_tol,
                const std::string& format) {
  CVec u = parse_complex_list(u_s);
  CVec e = parse_complex_list(eps_s);
  Complex tau = parse_complex(tau_s);
  SCheckResult r;
  if (kind == "kostant") {
    if (lat.type.empty() || lat.p <= 0)
      throw PreconditionError("kostant s-check needs --type and --p");
    RootSystem rs = parse_type(lat.type);
    r = s_check_kostant_negative(rs, lat.p, u, RegEps::make(e, rs), tau, tol);
  } else {
    std::unique_ptr<RootSystem> rs;
    QuadLattice L = lat.build(rs);
    RegEps eps = RegEps::make(e);
    if (kind == "partial")
      r = s_check_negative(L, u, eps, tau, tol);
    else if (kind == "full")
      r = s_check_full(L, u, eps, tau, tol);
    else
      throw PreconditionError("kind must be partial|kostant|full");
  }
  bool pass = r.rel_residual < check_tol;
  json j{{"command", "s-check"},
         {"kind", kind},
         {"lhs_re", r.lhs.real()},
         {"lhs_im", r.lhs.imag()},
         {"rhs_re", r.rhs.real()},
         {"rhs_im", r.rhs.imag()},
         {"residual", r.residual},
         {"rel_residual", r.rel_residual},
         {"pass", pass}};
  emit(j, format);
  return pass ? kOk : kVerification;
}

int cmd_char(const std::string& kind, const std::string& type_s, int p,
             const std::string& mu_s, const std::string& lam_s,
             const std::string& eps_s, const std::string& order_s,
             const std::string& format) {
  RootSystem rs = parse_type(type_s);
  Rational order = parse_rational(order_s);
  CVec e;
  const CVec* eps = nullptr;
  if (!eps_s.empty()) {
    e = parse_complex_list(eps_s);
    eps = &e;
  }
  json j{{"command", "char"},
         {"kind", kind},
         {"type", type_s},
         {"p", p}};
  if (kind == "atypical" || kind == "constant-term" || kind == "full") {
    if (mu_s.empty()) throw PreconditionError("this kind needs --mu");
    IntVec mu = parse_int_list(mu_s);
    j["mu"] = ivec_json(mu);
    if (kind == "atypical") {
      j["series"] = series_json(atypical_character(rs, p, mu, eps, order).series);
    } else if (kind == "constant-term") {
      j["series"] = series_json(constant_term_character(rs, p, mu, order));
    } else {
      WeightDecomposition dec = decompose_weight(rs, p, mu);
      j["series"] = series_json(full_character_specialized(rs, p, dec, order));
    }
  } else if (kind == "typical") {
    if (lam_s.empty()) throw PreconditionError("typical needs --lam");
    CVec lam = parse_complex_list(lam_s);
    j["lam"] = cvec_json(lam);
    j["series"] = series_json(typical_character(rs, p, lam, eps, order).series);
  } else {
    throw PreconditionError("kind must be atypical|constant-term|full|typical");
  }
  emit(j, format);
  return kOk;
}

json region_json(const RegionData& rd) {
  json cell = json::array();
  for (const auto& m : rd.cell) cell.push_back(ivec_json(m));
  return json{{"k_star", ivec_json(rd.k_star)},
              {"d_value", rd.d_value},
              {"unique_min", rd.unique_min},
              {"k_star_in_cell", rd.k_star_in_cell},
              {"k_star_in_N", rd.k_star_in_N},
              {"cell_meets_N", rd.cell_meets_N},
              {"large_ok", rd.large_ok},
              {"conditions_met", rd.conditions_met},
              {"cell", cell}};
}

int cmd_qdim(const std::string& type_s, int p, const std::string& mu_s,
             const std::string& lam_s, const std::string& eps_s, bool numeric,
             const std::string& format) {
  RootSystem rs = parse_type(type_s);
  CVec e = parse_complex_list(eps_s);
  if (e.size() != rs.rank) throw PreconditionError("eps length != rank");
  bool all_zero = true, all_neg = true, all_pos = true;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i] != Complex(0.0, 0.0)) all_zero = false;
    if (e[i].real() >= 0.0) all_neg = false;
    if (e[i].real() <= 0.0) all_pos = false;
  }
  json j{{"command", "qdim"}, {"type", type_s}, {"p", p}};
  json diagnostics;

  if (!mu_s.empty()) {
    IntVec mu = parse_int_list(mu_s);
    j["mu"] = ivec_json(mu);
    j["module"] = "atypical";
    if (all_zero) {
      j["region"] = "eps0";
      Rational v = qdim_atypical_eps0(rs, p, mu);
      j["value_re"] = to_double(v);
      j["value_im"] = 0.0;
      j["value_exact"] = rat_str(v);
    } else if (all_neg) {
      j["region"] = "neg";
      Complex v = qdim_atypical_closed(rs, p, mu, e);
      j["value_re"] = v.real();
      j["value_im"] = v.imag();
    } else if (all_pos) {
      j["region"] = "pos";
      QdimPosResult r = qdim_positive_region(rs, p, mu, e);
      j["conditions"] = region_json(r.region);
      if (r.conditions_met) {
        j["value_re"] = r.value.real();
        j["value_im"] = r.value.imag();
      }
    } else {
      throw PreconditionError("mixed-sign Re(eps) has no closed qdim region");
    }
    if (numeric && !all_zero) {
      auto r = qdim_numeric(rs, p, QdimRequest::atypical(mu, e));
      diagnostics["numeric_re"] = r.value.real();
      diagnostics["numeric_im"] = r.value.imag();
      json ratios = json::array();
      for (const auto& z : r.ratios)
        ratios.push_back({{"re", z.real()}, {"im", z.imag()}});
      diagnostics["ratios"] = ratios;
    }
  } else if (!lam_s.empty()) {
    CVec lam = parse_complex_list(lam_s);
    j["lam"] = cvec_json(lam);
    j["module"] = "typical";
    if (all_zero) {
      j["region"] = "eps0";
      TypicalEps0 v = qdim_typical_eps0(rs, p);
      j["limit_value"] = v.limit_value;
      j["inverted_value"] = v.inverted_value;
    } else if (all_neg) {
      j["region"] = "neg";
      Complex v = qdim_typical_closed(rs, p, lam, e);
      j["value_re"] = v.real();
      j["value_im"] = v.imag();
    } else if (all_pos) {
      j["region"] = "pos";
      j["value_re"] = 0.0;  // typical ratios collapse in this region
      j["value_im"] = 0.0;
    } else {
      throw PreconditionError("mixed-sign Re(eps) has no closed qdim region");
    }
    if (numeric && !all_zero) {
      auto r = qdim_numeric(rs, p, QdimRequest::typical_req(lam, e));
      diagnostics["numeric_re"] = r.value.real();
      diagnostics["numeric_im"] = r.value.imag();
    }
  } else {
    throw PreconditionError("qdim needs --mu or --lam");
  }
  j["eps"] = cvec_json(e);
  if (!diagnostics.is_null()) j["diagnostics"] = diagnostics;
  emit(j, format);
  return kOk;
}

json sweep_row(const RootSystem& rs, int p, const IntVec& mu, const CVec& e) {
  json row;
  json eps_re = json::array(), eps_im = json::array();
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    eps_re.push_back(e[i].real());
    eps_im.push_back(e[i].imag());
  }
  row["eps_re"] = eps_re;
  row["eps_im"] = eps_im;
  bool all_neg = true, all_pos = true;
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i].real() >= 0.0) all_neg = false;
    if (e[i].real() <= 0.0) all_pos = false;
  }
  row["region"] = all_neg ? "neg" : (all_pos ? "pos" : "mixed");
  row["conditions"] = "";
  row["qdim_re"] = nullptr;
  row["qdim_im"] = nullptr;
  row["k_star"] = "";
  try {
    if (all_neg) {
      Complex v = qdim_atypical_closed(rs, p, mu, e);
      row["qdim_re"] = v.real();
      row["qdim_im"] = v.imag();
    } else if (all_pos) {
      QdimPosResult r = qdim_positive_region(rs, p, mu, e);
      row["conditions"] = r.conditions_met ? "met" : "unmet";
      std::string ks;
      for (Eigen::Index i = 0; i < r.region.k_star.size(); ++i)
        ks += (i ? ";" : "") + std::to_string(r.region.k_star[i]);
      row["k_star"] = ks;
      if (r.conditions_met) {
        row["qdim_re"] = r.value.real();
        row["qdim_im"] = r.value.imag();
      }
    }
  } catch (const std::exception& ex) {
    row["conditions"] = std::string("error: ") + ex.what();
  }
  return row;
}

int cmd_qdim_sweep(const std::string& type_s, int p, const std::string& mu_s,
                   const std::string& start_s, const std::string& stop_s,
                   int steps, const std::string& format) {
  RootSystem rs = parse_type(type_s);
  IntVec mu = parse_int_list(mu_s);
  CVec start = parse_complex_list(start_s);
  CVec stop = parse_complex_list(stop_s);
  if (start.size() != rs.rank || stop.size() != rs.rank)
    throw PreconditionError("eps grid endpoints must have length rank");
  if (steps < 1) throw PreconditionError("steps must be >= 1");

  std::vector<std::future<json>> rows;
  for (int k = 0; k < steps; ++k) {
    double s = steps == 1 ? 0.0 : static_cast<double>(k) / (steps - 1);
    CVec e = start + s * (stop - start);
    rows.push_back(std::async(std::launch::async,
                              [&rs, p, mu, e] { return sweep_row(rs, p, mu, e); }));
  }
  json out_rows = json::array();
  for (auto& f : rows) out_rows.push_back(f.get());

  if (format == "csv") {
    int n = rs.rank;
    for (int i = 0; i < n; ++i) std::cout << "eps_re_" << i << ",";
    for (int i = 0; i < n; ++i) std::cout << "eps_im_" << i << ",";
    std::cout << "region,conditions,qdim_re,qdim_im,k_star\n";
    for (const auto& row : out_rows) {
      for (int i = 0; i < n; ++i) std::cout << row["eps_re"][i].dump() << ",";
      for (int i = 0; i < n; ++i) std::cout << row["eps_im"][i].dump() << ",";
      std::cout << row["region"].get<std::string>() << ","
                << row["conditions"].get<std::string>() << ","
                << (row["qdim_re"].is_null() ? "" : row["qdim_re"].dump())
                << ","
                << (row["qdim_im"].is_null() ? "" : row["qdim_im"].dump())
                << "," << row["k_star"].get<std::string>() << "\n";
    }
    return kOk;
  }
  json j{{"command", "qdim-sweep"},
         {"type", type_s},
         {"p", p},
         {"mu", ivec_json(mu)},
         {"rows", out_rows}};
  emit(j, format);
  return kOk;
}

int cmd_verify(std::uint64_t seed, const std::string& format) {
  std::ostringstream buf;
  int failures = run_acceptance(seed, buf);
  if (format == "json") {
    json lines = json::array();
    std::string line;
    std::istringstream in(buf.str());
    while (std::getline(in, line)) lines.push_back(line);
    json j{{"command", "verify"},
           {"seed", seed},
           {"failures", failures},
           {"lines", lines}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << buf.str();
  }
  return failures == 0 ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regularized partial/Kostant theta functions, characters, "
               "and quantum dimensions on rescaled ADE root lattices"};
  app.set_config("--config", "", "config file with key=value lines");

  std::string format = "json";
  double tol = 1e-8;
  std::uint64_t seed = 12345;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--tol", tol, "numeric tolerance");
  app.add_option("--seed", seed, "seed for randomized checks");
  app.require_subcommand(1);

  // root-info
  std::string ri_type;
  int ri_rank = 0;
  auto* ri = app.add_subcommand("root-info", "root system summary");
  ri->add_option("type", ri_type, "family letter A|D|E")->required();
  ri->add_option("rank", ri_rank, "rank")->required();

  // kostant
  std::string ko_type, ko_beta;
  int ko_rank = 0;
  auto* ko = app.add_subcommand("kostant", "Kostant partition value");
  ko->add_option("type", ko_type)->required();
  ko->add_option("rank", ko_rank)->required();
  ko->add_option("--beta", ko_beta, "comma-separated alpha-coordinates")
      ->required();

  // theta-eval
  std::string te_kind, te_u, te_eps, te_tau = "0+0.8i", te_offset, te_signs,
              te_b;
  LatticeSpec te_lat;
  auto* te = app.add_subcommand("theta-eval", "evaluate a theta function");
  te->add_option("kind", te_kind, "partial|kostant|modified")->required();
  te->add_option("--type", te_lat.type, "root system, e.g. A2");
  te->add_option("--p", te_lat.p, "rescaling parameter");
  te->add_option("--gram", te_lat.gram, "integer Gram matrix, rows ';'");
  te->add_option("--u", te_u, "comma-separated complex components")->required();
  te->add_option("--eps", te_eps, "comma-separated complex components")
      ->required();
  te->add_option("--tau", te_tau, "complex modular parameter, Im > 0");
  te->add_option("--cone-offset", te_offset, "integer cone shift (partial)");
  te->add_option("--signs", te_signs, "sign vector s (modified)");
  te->add_option("--B", te_b, "real matrix for the modified theta");

  // s-check
  std::string sc_kind, sc_u, sc_eps, sc_tau = "0+0.8i";
  double sc_check_tol = 1e-6;
  LatticeSpec sc_lat;
  auto* sc = app.add_subcommand("s-check", "verify an S-transform identity");
  sc->add_option("kind", sc_kind, "partial|kostant|full")->required();
  sc->add_option("--type", sc_lat.type);
  sc->add_option("--p", sc_lat.p);
  sc->add_option("--gram", sc_lat.gram);
  sc->add_option("--u", sc_u)->required();
  sc->add_option("--eps", sc_eps)->required();
  sc->add_option("--tau", sc_tau);
  sc->add_option("--check-tol", sc_check_tol, "pass threshold on rel residual");

  // char
  std::string ch_kind, ch_type, ch_mu, ch_lam, ch_eps, ch_order = "10";
  int ch_p = 0;
  auto* ch = app.add_subcommand("char", "module character q-series");
  ch->add_option("kind", ch_kind, "atypical|constant-term|full|typical")
      ->required();
  ch->add_option("--type", ch_type)->required();
  ch->add_option("--p", ch_p)->required();
  ch->add_option("--mu", ch_mu, "integer coordinates, lambda_j basis");
  ch->add_option("--lam", ch_lam, "complex coordinates, lambda_j basis");
  ch->add_option("--eps", ch_eps);
  ch->add_option("--order", ch_order, "exponent cap (rational)");

  // qdim
  std::string qd_type, qd_mu, qd_lam, qd_eps;
  int qd_p = 0;
  bool qd_numeric = false;
  auto* qd = app.add_subcommand("qdim", "regularized quantum dimension");
  qd->add_option("--type", qd_type)->required();
  qd->add_option("--p", qd_p)->required();
  qd->add_option("--mu", qd_mu);
  qd->add_option("--lam", qd_lam);
  qd->add_option("--eps", qd_eps)->required();
  qd->add_flag("--numeric", qd_numeric, "also compute the numeric limit");

  // qdim-sweep
  std::string qs_type, qs_mu, qs_start, qs_stop;
  int qs_p = 0, qs_steps = 2;
  auto* qs = app.add_subcommand("qdim-sweep", "qdim over an eps grid");
  qs->add_option("--type", qs_type)->required();
  qs->add_option("--p", qs_p)->required();
  qs->add_option("--mu", qs_mu)->required();
  qs->add_option("--eps-start", qs_start)->required();
  qs->add_option("--eps-stop", qs_stop)->required();
  qs->add_option("--steps", qs_steps);

  // verify
  auto* vf = app.add_subcommand("verify", "run the acceptance criteria");

  // let global flags (--format, --tol, --seed) appear after the subcommand
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ri->parsed()) return cmd_root_info(ri_type, ri_rank, format);
    if (ko->parsed()) return cmd_kostant(ko_type, ko_rank, ko_beta, format);
    if (te->parsed())
      return cmd_theta_eval(te_kind, te_lat, te_u, te_eps, te_tau, te_offset,
                            te_signs, te_b, tol, format);
    if (sc->parsed())
      return cmd_s_check(sc_kind, sc_lat, sc_u, sc_eps, sc_tau, tol,
                         sc_check_tol, format);
    if (ch->parsed())
      return cmd_char(ch_kind, ch_type, ch_p, ch_mu, ch_lam, ch_eps, ch_order,
                      format);
    if (qd->parsed())
      return cmd_qdim(qd_type, qd_p, qd_mu, qd_lam, qd_eps, qd_numeric,
                      format);
    if (qs->parsed())
      return cmd_qdim_sweep(qs_type, qs_p, qs_mu, qs_start, qs_stop, qs_steps,
                            format);
    if (vf->parsed()) return cmd_verify(seed, format);
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
