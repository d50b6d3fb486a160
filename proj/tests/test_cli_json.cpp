#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#ifndef CLI_PATH
#define CLI_PATH "./wtheta"
#endif
#ifndef SCHEMA_DIR
#define SCHEMA_DIR "../schemas"
#endif

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(SCHEMA_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

// minimal structural validator: type / required / properties / items / enum
void validate(const json& schema, const json& value, const std::string& path,
              std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && value.is_object()) ||
              (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) ||
              (t == "number" && value.is_number()) ||
              (t == "integer" && value.is_number_integer()) ||
              (t == "boolean" && value.is_boolean());
    if (!ok) {
      errors.push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"])
      if (e == value) found = true;
    if (!found) errors.push_back(path + ": not in enum");
  }
  if (schema.contains("required") && value.is_object())
    for (const auto& k : schema["required"])
      if (!value.contains(k.get<std::string>()))
        errors.push_back(path + ": missing " + k.get<std::string>());
  if (schema.contains("properties") && value.is_object())
    for (const auto& [k, sub] : schema["properties"].items())
      if (value.contains(k)) validate(sub, value[k], path + "." + k, errors);
  if (schema.contains("items") && value.is_array())
    for (std::size_t i = 0; i < value.size(); ++i)
      validate(schema["items"], value[i], path + "[" + std::to_string(i) + "]",
               errors);
}

json check_against(const std::string& schema_file, const std::string& args,
                   int expect_exit = 0) {
  RunResult r = run_cli(args);
  CHECK(r.exit_code == expect_exit);
  json v = json::parse(r.out);
  std::vector<std::string> errors;
  validate(load_schema(schema_file), v, "$", errors);
  for (const auto& e : errors) FAIL_CHECK(schema_file, ": ", e);
  return v;
}

}  // namespace

TEST_CASE("root-info") {
  json v = check_against("root_info.schema.json", "root-info A 2");
  CHECK(v["num_positive_roots"] == 3);
  CHECK(v["weyl_order"] == 6);
}

TEST_CASE("kostant") {
  json v = check_against("kostant.schema.json", "kostant A 2 --beta 3,2");
  CHECK(v["value"] == "3");
}

TEST_CASE("theta-eval kinds") {
  check_against("theta_eval.schema.json",
                "theta-eval partial --gram 2 --u 0.1 --eps=-0.4+0.1i");
  check_against("theta_eval.schema.json",
                "theta-eval partial --gram 2 --u 0.1 --eps=-0.4 "
                "--cone-offset=-1");
  check_against("theta_eval.schema.json",
                "theta-eval kostant --type A1 --p 2 --u 0.1 --eps=-0.4");
  check_against("theta_eval.schema.json",
                "theta-eval modified --B 1 --u 0.2 --eps 0.3 --tau 0+1.1i");
}

TEST_CASE("s-check kinds and verification exit code") {
  json v = check_against("s_check.schema.json",
                         "s-check partial --gram 2 --u 0.1 --eps=-0.4+0.1i");
  CHECK(v["pass"] == true);
  check_against("s_check.schema.json",
                "s-check kostant --type A1 --p 2 --u 0.1 --eps=-0.4");
  check_against("s_check.schema.json",
                "s-check full --gram 3 --u 0.1 --eps 0.35+0.1i");
  // an unreachable threshold flips the exit code to 5
  check_against("s_check.schema.json",
                "s-check partial --gram 2 --u 0.1 --eps=-0.4 --check-tol 1e-30",
                5);
}

TEST_CASE("char kinds") {
  json v = check_against("char.schema.json",
                         "char atypical --type A1 --p 2 --mu 0 --order 8");
  CHECK(v["series"]["terms"].size() == 4);
  CHECK(v["series"]["terms"][0]["exponent"] == "1/8");
  CHECK(v["series"]["terms"][0]["coeff_re"] == 1.0);
  check_against("char.schema.json",
                "char constant-term --type A1 --p 2 --mu 0 --order 8");
  check_against("char.schema.json",
                "char typical --type A1 --p 2 --lam 0.3 --order 6");
  check_against("char.schema.json",
                "char full --type A1 --p 2 --mu 0 --order 6");
  check_against("char.schema.json",
                "char atypical --type A2 --p 2 --mu 1,-2 --eps=-0.1,-0.2");
}

TEST_CASE("qdim regions") {
  json neg = check_against("qdim.schema.json",
                           "qdim --type A1 --p 2 --mu 0 --eps=-0.3");
  CHECK(neg["region"] == "neg");
  CHECK(neg["value_re"] == 1.0);
  json pos = check_against("qdim.schema.json",
                           "qdim --type A1 --p 2 --mu 2 --eps 3-1i");
  CHECK(pos["region"] == "pos");
  CHECK(pos["conditions"]["conditions_met"] == true);
  json zero = check_against("qdim.schema.json",
                            "qdim --type A1 --p 2 --mu 1 --eps 0");
  CHECK(zero["region"] == "eps0");
  CHECK(zero["value_exact"] == "2/1");
  json typ = check_against("qdim.schema.json",
                           "qdim --type A1 --p 2 --lam 0.3 --eps=-0.2");
  CHECK(typ["module"] == "typical");
}

TEST_CASE("qdim sweep rows") {
  json v = check_against(
      "qdim_sweep.schema.json",
      "qdim-sweep --type A1 --p 2 --mu 2 --eps-start=-0.5-1i "
      "--eps-stop 3-1i --steps 4");
  CHECK(v["rows"].size() == 4);
  CHECK(v["rows"][0]["region"] == "neg");
  CHECK(v["rows"][3]["region"] == "pos");
  CHECK(v["rows"][3]["conditions"] == "met");
}

TEST_CASE("error exit codes") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("qdim --type A1 --p 2 --eps=-0.3").exit_code == 3);
  CHECK(run_cli("theta-eval partial --gram 2 --u 0.1 --eps 0+0.3i").exit_code ==
        3);
}

TEST_CASE("deterministic output") {
  RunResult a = run_cli("char atypical --type A2 --p 2 --mu 1,-2 --order 10");
  RunResult b = run_cli("char atypical --type A2 --p 2 --mu 1,-2 --order 10");
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("verify command") {
  json v = check_against("verify.schema.json", "verify --seed 12345");
  CHECK(v["failures"] == 0);
  CHECK(v["lines"].size() == 10);
}
