// Acceptance run: one line per criterion, exit status 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "epitheta/classify.hpp"
#include "epitheta/corresp.hpp"
#include "epitheta/suites.hpp"

using namespace epitheta;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_s(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", s);
  return buf;
}

std::string first_failure(const Checks& cs) {
  for (const auto& c : cs)
    if (!c.pass) return c.name + ": " + c.witness;
  return "";
}

std::uint64_t total_cases(const Checks& cs) {
  std::uint64_t n = 0;
  for (const auto& c : cs) n += c.cases;
  return n;
}

Outcome suite_outcome(const Checks& cs, double secs, double limit) {
  Outcome o;
  o.pass = all_pass(cs) && (limit <= 0 || secs <= limit);
  o.detail = std::to_string(cs.size()) + " checks, " + std::to_string(total_cases(cs)) + " cases, " + fmt_s(secs);
  if (!all_pass(cs)) o.detail += "; " + first_failure(cs);
  else if (limit > 0 && secs > limit) o.detail += " exceeds " + fmt_s(limit);
  return o;
}

// (D_n,C_n), (C_n,D_n+1), (C_n,B_n), (A_n,A_n), (A_n,A_n+1) from a type string such as "(C_1, B_1)".
std::string family(const std::string& type) {
  std::smatch m;
  if (!std::regex_match(type, m, std::regex(R"(\(([A-D])_(\d+), ([A-D])_(\d+)\))"))) return "?";
  char a = m[1].str()[0], b = m[3].str()[0];
  int r = std::stoi(m[2]), rp = std::stoi(m[4]);
  if (a == 'D' && b == 'C' && r == rp) return "(D_n,C_n)";
  if (a == 'C' && b == 'D' && rp == r + 1) return "(C_n,D_n+1)";
  if (a == 'C' && b == 'B' && r == rp) return "(C_n,B_n)";
  if (a == 'A' && b == 'A' && r == rp) return "(A_n,A_n)";
  if (a == 'A' && b == 'A' && rp == r + 1) return "(A_n,A_n+1)";
  return "?";
}

struct Verified {
  std::string setting, type;
  VerifyResult result;
  double seconds = 0;
};

const Check* find(const VerifyResult& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool passed(const VerifyResult& r, const std::string& name) {
  const Check* c = find(r, name);
  return c && c->pass;
}

std::vector<Verified> verify_instances(const Executor& exec) {
  std::vector<Verified> out;
  auto generic = [](const CorrespInstance& i) { return !detect_case_E(i); };
  for (const auto& [name, s] : standard_settings(3)) {
    auto type = dual_pair_type(s).value_or("unsupported");
    for (const auto& w : find_stable_w(s, 3, 1, 10'000'000, generic)) {
      auto t0 = std::chrono::steady_clock::now();
      auto r = verify_theorem(make_instance(s, w), VerifyOptions{10'000'000, &exec});
      out.push_back({name, type, r, seconds_since(t0)});
    }
  }
  for (const auto& [name, inst] : case_E_instances(3)) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = verify_theorem(inst, VerifyOptions{10'000'000, &exec});
    out.push_back({name, dual_pair_type(inst.setting).value_or("unsupported"), r, seconds_since(t0)});
  }
  return out;
}

Outcome criterion1(const Executor& exec) {
  auto t0 = std::chrono::steady_clock::now();
  SearchOptions opt;
  opt.exec = &exec;
  auto t = classification_table(2, 5, opt);
  double secs = seconds_since(t0);
  std::set<std::string> got, want;
  bool certified = true;
  int yes = 0, no = 0;
  for (const auto& row : t.rows) {
    if (in_rs_list(row.type)) want.insert(row.type.str());
    const auto& r = row.result;
    if (r.verdict == RsResult::yes) {
      got.insert(row.type.str());
      ++yes;
      if (!r.witness || !r.oracle_ok || r.P == "0" || r.Pp == "0") certified = false;
    } else {
      ++no;
      if (r.verdict != RsResult::no || !r.exhaustive || r.certificate.empty()) certified = false;
    }
  }
  Outcome o;
  o.pass = got == want && certified && t.all_match() && secs <= 300;
  o.detail = std::to_string(t.rows.size()) + " pair types, " + std::to_string(yes) + " yes with witnesses, " + std::to_string(no) +
             " exhaustive no, " + fmt_s(secs);
  if (got != want) o.detail += "; yes-set differs from the list";
  if (!certified) o.detail += "; uncertified verdict";
  return o;
}

Outcome criterion3(const std::vector<Verified>& vs) {
  std::map<std::string, int> per_family;
  bool ok = true, saw_E = false;
  double worst = 0;
  std::string bad;
  for (const auto& v : vs) {
    const auto& r = v.result;
    worst = std::max(worst, v.seconds);
    bool good = passed(r, "precondition_stable") && passed(r, "fiber_equals_orbit");
    if (r.case_E) {
      saw_E = true;
      good = good && passed(r, "sbar_w_equals_sbar_lambda") && passed(r, "orbit_stabilizer_count");
    } else {
      good = good && passed(r, "free_action") && r.fiber_size == r.order_S;
      if (good) per_family[family(v.type)] += 1;
    }
    if (!good) {
      ok = false;
      if (bad.empty()) bad = v.setting;
    }
  }
  std::string counts;
  for (const char* f : {"(D_n,C_n)", "(C_n,D_n+1)", "(C_n,B_n)", "(A_n,A_n)", "(A_n,A_n+1)"}) {
    if (per_family[f] < 3) ok = false;
    counts += std::string(counts.empty() ? "" : ", ") + f + " " + std::to_string(per_family[f]);
  }
  Outcome o;
  o.pass = ok && saw_E && worst <= 180;
  o.detail = "free orbits: " + counts + "; case (E) " + (saw_E ? "checked" : "missing") + "; slowest instance " + fmt_s(worst);
  if (!bad.empty()) o.detail += "; failure in " + bad;
  return o;
}

Outcome criterion4(const std::vector<Verified>& vs) {
  bool ok = true;
  int generic = 0, caseE = 0;
  std::string bad;
  for (const auto& v : vs) {
    const auto& r = v.result;
    bool good = passed(r, "multiplicities_zero_one") && passed(r, "multiplicity_support") && passed(r, "predicted_lift_agrees");
    if (r.case_E) {
      good = good && passed(r, "lifted_character_count");
      ++caseE;
    } else {
      ++generic;
    }
    if (!good) {
      ok = false;
      if (bad.empty()) bad = v.setting;
    }
  }
  Outcome o;
  o.pass = ok && caseE > 0 && generic > 0;
  o.detail = std::to_string(generic) + " generic and " + std::to_string(caseE) + " case (E) instances";
  if (!bad.empty()) o.detail += "; failure in " + bad;
  return o;
}

Outcome criterion9() {
  const std::string bin = EPITHETA_BIN;
  fs::path dir = fs::temp_directory_path() / "epitheta_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> texts;
  for (const char* name : {"a.json", "b.json"}) {
    std::string cmd = bin + " selftest --seed 1 --quiet --out " + (dir / name).string();
    int s = std::system(cmd.c_str());
    if (!WIFEXITED(s) || WEXITSTATUS(s) != 0) return {false, "selftest exited with " + std::to_string(WEXITSTATUS(s))};
    std::ifstream in(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    texts.push_back(ss.str());
  }
  Outcome o;
  o.pass = !texts[0].empty() && texts[0] == texts[1];
  o.detail = "two selftest runs, " + std::to_string(texts[0].size()) + " bytes each, " + (o.pass ? "identical" : "different") +
             ", " + fmt_s(seconds_since(t0));
  return o;
}

}  // namespace

int main() {
  Executor exec(Executor::hardware());
  SuiteContext ctx;
  ctx.seed = 1;
  ctx.samples = 10'000;
  ctx.points = 1'000;
  ctx.exec = &exec;

  std::vector<Verified> verified;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"classification over F_5 at rank <= 2", [&] { return criterion1(exec); }},
      {"moment identities", [&] {
         auto t0 = std::chrono::steady_clock::now();
         auto cs = moment_suite(ctx);
         return suite_outcome(cs, seconds_since(t0), 60);
       }},
      {"fiber = orbit, free action, case (E) count", [&] {
         verified = verify_instances(exec);
         return criterion3(verified);
       }},
      {"character matching", [&] { return criterion4(verified); }},
      {"jump-set laws on 1000 points", [&] {
         auto t0 = std::chrono::steady_clock::now();
         auto cs = jump_suite(ctx);
         return suite_outcome(cs, seconds_since(t0), 0);
       }},
      {"first-order oscillator identity", [&] {
         auto t0 = std::chrono::steady_clock::now();
         auto cs = oscillator_suite(ctx);
         return suite_outcome(cs, seconds_since(t0), 0);
       }},
      {"P-oracle agreement", [&] {
         auto t0 = std::chrono::steady_clock::now();
         auto cs = rs_oracle_suite(ctx);
         return suite_outcome(cs, seconds_since(t0), 0);
       }},
      {"splitting dimensions", [&] {
         auto t0 = std::chrono::steady_clock::now();
         auto cs = splitting_suite(ctx);
         auto o = suite_outcome(cs, seconds_since(t0), 0);
         if (!cs.empty()) o.detail += "; " + cs.front().note;
         return o;
       }},
      {"selftest determinism", [&] { return criterion9(); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " (" << o.detail
              << ")" << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria pass")) << std::endl;
  return failed ? 1 : 0;
}
