#include <algorithm>
#include <iostream>

#include "epitheta/classify.hpp"
#include "epitheta/cli.hpp"
#include "epitheta/corresp.hpp"
#include "epitheta/lattice.hpp"
#include "epitheta/moment.hpp"
#include "epitheta/suites.hpp"

namespace epitheta::cli {

namespace {

using Schema = std::map<std::string, std::set<std::string>>;

const std::set<std::string> run_keys = {"seed", "budget", "samples", "points", "moment_sign"};
const std::set<std::string> point_keys = {"p", "d", "epsilon", "witt", "aniso", "epsilon_p", "witt_p", "aniso_p", "m"};
const std::set<std::string> setting_keys = {"preset", "kind", "p",  "d", "m",   "epsilon", "witt", "aniso", "epsilon_p",
                                            "witt_p", "aniso_p", "a", "a_p", "J", "J_p", "w",       "instances"};

struct RunParams {
  std::uint64_t seed = 1, budget = 10'000'000, samples = 10'000, points = 1'000;
  int moment_sign = 1;
};

RunParams run_params(const Config& cfg, const Overrides& ov, std::uint64_t default_budget) {
  RunParams r;
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  r.seed = ov.seed ? *ov.seed : static_cast<std::uint64_t>(cfg.get_int("run", "seed", 1, 0, big));
  r.budget = ov.budget ? *ov.budget : static_cast<std::uint64_t>(cfg.get_int("run", "budget", default_budget, 1, big));
  r.samples = static_cast<std::uint64_t>(cfg.get_int("run", "samples", 10'000, 1, 100'000'000));
  r.points = static_cast<std::uint64_t>(cfg.get_int("run", "points", 1'000, 1, 100'000'000));
  r.moment_sign = static_cast<int>(cfg.get_int("run", "moment_sign", 1, -1, 1));
  if (r.moment_sign == 0) cfg.error("run", "moment_sign", "must be 1 or -1");
  return r;
}

SuiteContext suite_context(const RunParams& r, const Executor& exec) {
  SuiteContext ctx;
  ctx.seed = r.seed;
  ctx.samples = r.samples;
  ctx.points = r.points;
  ctx.budget = r.budget;
  ctx.moment_sign = r.moment_sign;
  ctx.exec = &exec;
  return ctx;
}

void record_run(Report& rep, const RunParams& r) {
  rep.config["run.seed"] = std::to_string(r.seed);
  rep.config["run.budget"] = std::to_string(r.budget);
  rep.config["run.samples"] = std::to_string(r.samples);
  rep.config["run.points"] = std::to_string(r.points);
  rep.config["run.moment_sign"] = std::to_string(r.moment_sign);
}

DKind parse_d(const Config& cfg, const std::string& section, const std::string& def) {
  std::string d = cfg.get_choice(section, "d", def, {"split", "unramified", "ramified"});
  return d == "split" ? DKind::split : d == "unramified" ? DKind::unramified : DKind::ramified;
}

ApartmentPoint read_point(const Config& cfg, const std::string& section, DKind d, const std::string& suffix, int def_eps,
                          const std::vector<Rational>& def_witt, const std::vector<Rational>& def_aniso) {
  ApartmentPoint pt;
  pt.d = d;
  pt.epsilon = static_cast<int>(cfg.get_int(section, "epsilon" + suffix, def_eps, -1, 1));
  if (pt.epsilon == 0) cfg.error(section, "epsilon" + suffix, "must be 1 or -1");
  bool given = cfg.has(section, "witt" + suffix) || cfg.has(section, "aniso" + suffix);
  pt.witt = given ? cfg.get_rationals(section, "witt" + suffix) : def_witt;
  pt.aniso = given ? cfg.get_rationals(section, "aniso" + suffix) : def_aniso;
  if (pt.dim() == 0) cfg.error(section, "witt" + suffix, "empty point");
  try {
    pt.validate();
  } catch (const std::exception& e) {
    cfg.error(section, "aniso" + suffix, e.what());
  }
  if (pt.d == DKind::split && pt.epsilon == -1 && !pt.aniso.empty())
    cfg.error(section, "aniso" + suffix, "symplectic spaces have no anisotropic part");
  return pt;
}

FMat to_fmat(const FieldDesc& f, const std::vector<std::vector<std::int64_t>>& rows) {
  FMat A = fzeros(f, static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(static_cast<int>(i), static_cast<int>(j)) = Fq::from_int(f, rows[i][j]);
  return A;
}

int field_char(const Config& cfg, const std::string& section, const std::string& key, int def) {
  int p = static_cast<int>(cfg.get_int(section, key, def, 3, 97));
  if (!is_prime(p)) cfg.error(section, key, std::to_string(p) + " is not an odd prime");
  return p;
}

// ---------------------------------------------------------------- jumps

std::string factors(const ApartmentPoint& pt, int p) {
  std::string s;
  for (const auto& g : residue_group_shape(pt, p)) s += (s.empty() ? "" : " x ") + g.str();
  return s.empty() ? "1" : s;
}

Report cmd_jumps(const Config& cfg, const Overrides& ov, const Executor&) {
  cfg.validate({{"run", run_keys}, {"jumps", point_keys}});
  Report rep;
  rep.command = "jumps";
  rep.config = cfg.echo();
  RunParams r = run_params(cfg, ov, 10'000'000);
  record_run(rep, r);
  const DKind d = parse_d(cfg, "jumps", "split");
  const Rational q1(1, 4), h(1, 2), z(0);
  auto V = read_point(cfg, "jumps", d, "", -1, {q1}, {});
  bool pair = cfg.has("jumps", "witt_p") || cfg.has("jumps", "aniso_p") || cfg.has("jumps", "epsilon_p") ||
              !cfg.has("jumps", "witt");
  const int m = static_cast<int>(cfg.get_int("jumps", "m", 2, 1, 1000));
  const int p = field_char(cfg, "jumps", "p", 3);
  Table pts{"Points", {"space", "point", "normal form", "Jump", "residue group", "first Lie jump"}, {}};
  Section sec{"lattice functions", {}};
  auto describe = [&](const std::string& label, const ApartmentPoint& pt) {
    auto J = jumps(pt);
    pts.rows.push_back({label, pt.str(), pt.normal_form().str(), J.str(), factors(pt, p), first_lie_jump(pt).str()});
    Check sd{"lattice_selfdual [" + label + "]", "L = L#"}, sy{"jump_symmetry [" + label + "]", "Jump(L) = -Jump(L), total = dim V"};
    sd.cases = sy.cases = 1;
    if (!is_selfdual(pt)) sd.fail(pt.str());
    if (!J.symmetric() || J.total() != pt.dim()) sy.fail(J.str());
    sec.checks.push_back(sd);
    sec.checks.push_back(sy);
    return J;
  };
  auto J = describe("V", V);
  if (pair) {
    int eps_p = -V.epsilon;
    auto Vp = read_point(cfg, "jumps", d, "_p", eps_p, {h}, d == DKind::split ? std::vector<Rational>{z} : std::vector<Rational>{});
    auto Jp = describe("V'", Vp);
    auto T = tensor_jumps(J, Jp);
    auto dich = epipelagic_dichotomy(J, Jp, m);
    rep.summary["tensor_jumps"] = T.str();
    rep.summary["dichotomy"] = to_string(dich);
    rep.summary["m"] = std::to_string(m);
    Check ts{"tensor_sum_law", "Jump(L (x) L') = Jump(L) + Jump(L'), symmetric, commutative"};
    ts.cases = 1;
    if (!T.symmetric() || T != tensor_jumps(Jp, J)) ts.fail(T.str());
    sec.checks.push_back(ts);
    if (dich != Dichotomy::violation && V.epsilon * Vp.epsilon == -1) {
      auto s = splitting_dims(V, Vp, m);
      rep.summary["dim_sfW"] = std::to_string(s.dim_sfW);
      rep.summary["dim_sfX"] = std::to_string(s.dim_sfX);
      rep.summary["dim_sfY"] = std::to_string(s.dim_sfY);
      rep.summary["dim_W"] = std::to_string(s.dim_W);
      Table cls{"Splitting by class", {"mu mod 1", "dim X^[mu]"}, {}};
      int total = 0;
      for (const auto& [mu, x] : s.per_class) {
        cls.rows.push_back({mu.str(), std::to_string(x)});
        total += x;
      }
      rep.tables.push_back(cls);
      Check sp{"splitting", "dim sfW = dim sfX + dim sfY, 2 dim sfY = dim sfW, sum_mu dim X^[mu] = dim W"};
      sp.cases = 1;
      sp.witness = "W=" + std::to_string(s.dim_sfW) + " X=" + std::to_string(s.dim_sfX) + " Y=" + std::to_string(s.dim_sfY);
      if (s.dim_sfW != s.dim_sfX + s.dim_sfY || 2 * s.dim_sfY != s.dim_sfW || total != s.dim_W ||
          s.sfX_from_tensor != s.dim_sfX)
        sp.fail(sp.witness);
      sec.checks.push_back(sp);
    }
  }
  rep.tables.insert(rep.tables.begin(), pts);
  rep.sections.push_back(sec);
  return rep;
}

// ---------------------------------------------------------------- classify

Table classification_table_rows(const ClassificationTable& t) {
  Table tab{"Regular semisimple pairs over F_" + std::to_string(t.p),
            {"pair", "expected", "verdict", "source", "witness", "P", "P'", "certificate", "enumerated", "match"},
            {}};
  for (const auto& row : t.rows) {
    const auto& r = row.result;
    tab.rows.push_back({row.type.str(), row.expected ? "yes" : "no", to_string(r.verdict), r.source,
                        r.witness ? format_matrix(*r.witness) + (r.witness_field.empty() ? "" : " over " + r.witness_field) : "",
                        r.P, r.Pp, r.certificate, std::to_string(r.enumerated), row.match ? "yes" : "no"});
  }
  return tab;
}

SearchOptions search_options(const Config& cfg, const RunParams& r, const Executor& exec, const std::string& section) {
  SearchOptions opt;
  opt.budget = r.budget;
  opt.seed = r.seed;
  opt.family_tries = static_cast<int>(cfg.get_int(section, "family_tries", opt.family_tries, 0, 1'000'000));
  opt.random_samples = static_cast<int>(cfg.get_int(section, "random_samples", opt.random_samples, 0, 100'000'000));
  opt.extension_samples = static_cast<int>(cfg.get_int(section, "extension_samples", opt.extension_samples, 0, 100'000'000));
  opt.exec = &exec;
  return opt;
}

Report cmd_classify(const Config& cfg, const Overrides& ov, const Executor& exec) {
  cfg.validate({{"run", run_keys}, {"classify", {"p", "max_rank", "family_tries", "random_samples", "extension_samples"}}});
  Report rep;
  rep.command = "classify";
  rep.config = cfg.echo();
  RunParams r = run_params(cfg, ov, 1'000'000'000);
  record_run(rep, r);
  const int p = field_char(cfg, "classify", "p", 5);
  const int max_rank = ov.max_rank ? *ov.max_rank : static_cast<int>(cfg.get_int("classify", "max_rank", 2, 1, 3));
  if (max_rank < 1 || max_rank > 3) throw ConfigError("--max-rank: " + std::to_string(max_rank) + " outside [1, 3]");
  rep.config["classify.p"] = std::to_string(p);
  rep.config["classify.max_rank"] = std::to_string(max_rank);
  auto opt = search_options(cfg, r, exec, "classify");
  auto t = classification_table(max_rank, p, opt);
  rep.tables.push_back(classification_table_rows(t));
  int yes = 0, no = 0;
  for (const auto& row : t.rows) (row.result.verdict == RsResult::yes ? yes : no) += 1;
  rep.summary["pairs"] = std::to_string(t.rows.size());
  rep.summary["yes"] = std::to_string(yes);
  rep.summary["not yes"] = std::to_string(no);
  rep.summary["matches list"] = t.all_match() ? "yes" : "no";
  rep.sections.push_back({"classification", classification_checks(t, suite_context(r, exec))});
  return rep;
}

// ---------------------------------------------------------------- settings

struct SettingChoice {
  std::string name;
  CorrespSetting setting;
  std::optional<CorrespInstance> fixed;
};

SettingChoice read_setting(const Config& cfg, const std::string& def_preset) {
  const std::string sec = "setting";
  const int p = field_char(cfg, sec, "p", 3);
  auto preset = cfg.get(sec, "preset");
  bool explicit_kind = cfg.has(sec, "kind");
  if (preset && explicit_kind) cfg.error(sec, "preset", "give either preset or kind, not both");
  if (!explicit_kind) {
    std::string name = preset.value_or(def_preset);
    for (auto& s : standard_settings(p))
      if (s.name == name) return {s.name, std::move(s.setting), std::nullopt};
    for (auto& s : case_E_instances(p))
      if (s.name == name) return {s.name, s.instance.setting, s.instance};
    std::vector<std::string> names;
    for (const auto& s : standard_settings(p)) names.push_back("'" + s.name + "'");
    for (const auto& s : case_E_instances(p)) names.push_back("'" + s.name + "'");
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    cfg.error(sec, "preset", "unknown preset '" + name + "'; known: " + all);
  }
  const std::string kind = cfg.get_choice(sec, "kind", "direct", {"direct", "gl", "ramified", "tilde"});
  const int m = static_cast<int>(cfg.get_int(sec, "m", 2, 2, 64));
  const auto& f = FieldDesc::make(p, 1);
  try {
    if (kind == "direct") {
      DKind d = parse_d(cfg, sec, "split");
      if (d == DKind::ramified) cfg.error(sec, "d", "ramified points use kind = ramified");
      auto V = read_point(cfg, sec, d, "", -1, {Rational(1, 4)}, {});
      auto Vp = read_point(cfg, sec, d, "_p", -V.epsilon, {Rational(1, 2)}, {Rational(0)});
      return {"direct " + V.str() + " x " + Vp.str(), direct_setting(V, Vp, p, m), std::nullopt};
    }
    if (kind == "ramified") {
      auto V = read_point(cfg, sec, DKind::ramified, "", 1, {Rational(0)}, {});
      auto Vp = read_point(cfg, sec, DKind::ramified, "_p", -V.epsilon, {Rational(1, 4)}, {});
      return {"ramified " + V.str() + " x " + Vp.str(), ramified_setting(V, Vp, p), std::nullopt};
    }
    if (kind == "gl") {
      auto a = cfg.get_rationals(sec, "a"), ap = cfg.get_rationals(sec, "a_p");
      if (a.empty()) cfg.error(sec, "a", "required for kind = gl");
      if (ap.empty()) cfg.error(sec, "a_p", "required for kind = gl");
      return {"GL", gl_setting(f, a, ap, m), std::nullopt};
    }
    auto J = cfg.get_matrix(sec, "J"), Jp = cfg.get_matrix(sec, "J_p");
    if (J.empty()) cfg.error(sec, "J", "required for kind = tilde");
    if (Jp.empty()) cfg.error(sec, "J_p", "required for kind = tilde");
    return {"tilde", tilde_setting(f, to_fmat(f, J), to_fmat(f, Jp)), std::nullopt};
  } catch (const std::invalid_argument& e) {
    cfg.error(sec, "kind", e.what());
  } catch (const std::domain_error& e) {
    cfg.error(sec, "kind", e.what());
  }
}

std::vector<CorrespInstance> read_instances(const Config& cfg, const SettingChoice& sc, const RunParams& r, int def_count) {
  const std::string sec = "setting";
  if (cfg.has(sec, "w")) {
    const auto& s = sc.setting;
    FMat w = to_fmat(s.field(), cfg.get_matrix(sec, "w"));
    if (w.rows() != s.pair->w_rows() || w.cols() != s.pair->w_cols())
      cfg.error(sec, "w", "expected a " + std::to_string(s.pair->w_rows()) + " x " + std::to_string(s.pair->w_cols()) + " matrix");
    if (!s.X.contains(w)) cfg.error(sec, "w", "not an element of sfX");
    return {make_instance(s, w)};
  }
  if (sc.fixed) return {*sc.fixed};
  int count = static_cast<int>(cfg.get_int(sec, "instances", def_count, 1, 1000));
  std::vector<CorrespInstance> out;
  for (const auto& w : find_stable_w(sc.setting, count, r.seed, r.budget)) out.push_back(make_instance(sc.setting, w));
  return out;
}

// ---------------------------------------------------------------- stable-search

Report cmd_stable_search(const Config& cfg, const Overrides& ov, const Executor&) {
  cfg.validate({{"run", run_keys}, {"setting", setting_keys}});
  Report rep;
  rep.command = "stable-search";
  rep.config = cfg.echo();
  RunParams r = run_params(cfg, ov, 10'000'000);
  record_run(rep, r);
  auto sc = read_setting(cfg, "Sp2 x O3");
  const int count = static_cast<int>(cfg.get_int("setting", "instances", 3, 1, 1000));
  auto type = dual_pair_type(sc.setting);
  rep.summary["setting"] = sc.name;
  rep.summary["pair type"] = type.value_or("unsupported");
  rep.summary["dim sfX"] = std::to_string(sc.setting.X.dim());
  rep.summary["G"] = sc.setting.grading.describe();
  rep.summary["G'"] = sc.setting.grading_p.describe();
  std::vector<FMat> ws;
  if (sc.fixed) ws.push_back(sc.fixed->w_bar);
  else ws = find_stable_w(sc.setting, count, r.seed, r.budget);
  Table tab{"Stable instances", {"w", "lambda", "lambda'", "S", "S'", "case (E)"}, {}};
  Check found{"stable_instances", "#{w in sfX : (M(w), -M'(w)) stable, pairwise distinct} >= " + std::to_string(sc.fixed ? 1 : count)};
  Check cand{"stable_candidates", "lam, lam' regular semisimple of degree -1 with zero degree-0 centralizer"};
  found.cases = ws.size();
  found.witness = std::to_string(ws.size()) + " found";
  if (!sc.fixed && static_cast<int>(ws.size()) < count) found.fail(found.witness);
  for (const auto& w : ws) {
    auto inst = sc.fixed ? *sc.fixed : make_instance(sc.setting, w);
    ++cand.cases;
    bool stable = is_stable_instance(inst);
    if (!stable) cand.fail("w=" + format_matrix(w));
    auto S = stabilizer(sc.setting.grading, inst.lam, r.budget), Sp = stabilizer(sc.setting.grading_p, inst.lam_p, r.budget);
    tab.rows.push_back({format_matrix(w), format_matrix(inst.lam), format_matrix(inst.lam_p),
                        std::to_string(S.order()) + " " + S.structure(), std::to_string(Sp.order()) + " " + Sp.structure(),
                        detect_case_E(inst) ? "yes" : "no"});
  }
  rep.tables.push_back(tab);
  rep.sections.push_back({"stable search", {found, cand}});
  return rep;
}

// ---------------------------------------------------------------- verify

Report cmd_verify(const Config& cfg, const Overrides& ov, const Executor& exec) {
  cfg.validate({{"run", run_keys}, {"setting", setting_keys}});
  Report rep;
  rep.command = "verify";
  rep.config = cfg.echo();
  RunParams r = run_params(cfg, ov, 10'000'000);
  record_run(rep, r);
  auto sc = read_setting(cfg, "Sp2 x O3");
  auto insts = read_instances(cfg, sc, r, 1);
  rep.summary["setting"] = sc.name;
  rep.summary["pair type"] = dual_pair_type(sc.setting).value_or("unsupported");
  Table tab{"Instances", {"w", "lambda", "lambda'", "S", "S'", "fiber", "[S:Sbar]", "case (E)"}, {}};
  if (insts.empty()) {
    Check none{"stable_instances", "a stable instance exists in sfX"};
    none.fail("no stable w found within budget");
    rep.sections.push_back({"verify", {none}});
  }
  for (const auto& inst : insts) {
    auto res = verify_theorem(inst, VerifyOptions{r.budget, &exec});
    tab.rows.push_back({format_matrix(inst.w_bar), format_matrix(inst.lam), format_matrix(inst.lam_p),
                        std::to_string(res.order_S) + " " + res.structure_S, std::to_string(res.order_Sp) + " " + res.structure_Sp,
                        std::to_string(res.fiber_size), std::to_string(res.index_sbar), res.case_E ? "yes" : "no"});
    rep.sections.push_back({"w = " + format_matrix(inst.w_bar), res.checks});
  }
  rep.tables.push_back(tab);
  return rep;
}

// ---------------------------------------------------------------- selftest

Report cmd_selftest(const Config& cfg, const Overrides& ov, const Executor& exec) {
  cfg.validate({{"run", run_keys}, {"selftest", {"max_rank", "p", "per_setting"}}});
  Report rep;
  rep.command = "selftest";
  rep.config = cfg.echo();
  RunParams r = run_params(cfg, ov, 10'000'000);
  record_run(rep, r);
  const int max_rank = ov.max_rank ? *ov.max_rank : static_cast<int>(cfg.get_int("selftest", "max_rank", 1, 1, 3));
  if (max_rank < 1 || max_rank > 3) throw ConfigError("--max-rank: " + std::to_string(max_rank) + " outside [1, 3]");
  const int p = field_char(cfg, "selftest", "p", 5);
  const int per = static_cast<int>(cfg.get_int("selftest", "per_setting", 3, 1, 100));
  rep.config["selftest.max_rank"] = std::to_string(max_rank);
  rep.config["selftest.p"] = std::to_string(p);
  rep.config["selftest.per_setting"] = std::to_string(per);
  auto ctx = suite_context(r, exec);

  Check conv{"action_convention", "X.w = -wX makes <X.w,w> = 2 B(M(w),X) hold"};
  conv.cases = 1;
  try {
    assert_action_convention();
  } catch (const std::exception& e) {
    conv.fail(e.what());
  }
  auto numeric = numeric_suite(ctx);
  numeric.insert(numeric.begin(), conv);
  rep.sections.push_back({"numeric", numeric});
  rep.sections.push_back({"moment identities", moment_suite(ctx)});
  rep.sections.push_back({"first-order oscillator", oscillator_suite(ctx)});
  rep.sections.push_back({"regular semisimple oracle", rs_oracle_suite(ctx)});
  rep.sections.push_back({"jump sets", jump_suite(ctx)});
  rep.sections.push_back({"splitting", splitting_suite(ctx)});
  rep.sections.push_back({"gradings", grading_suite(ctx)});
  rep.sections.push_back({"correspondence", corresp_suite(ctx, per)});

  SearchOptions opt;
  opt.budget = std::max<std::uint64_t>(r.budget, 100'000'000);
  opt.seed = r.seed;
  opt.exec = &exec;
  auto t = classification_table(max_rank, p, opt);
  // excluded pairs just above the table
  for (PairType extra : {PairType{PairType::sp_o, 2, 5}, PairType{PairType::gl_gl, 1, 3}}) {
    bool dup = std::any_of(t.rows.begin(), t.rows.end(), [&](const TableRow& row) { return row.type == extra; });
    if (dup) continue;
    TableRow row{extra, rs_pair_exists(extra, p, opt), in_rs_list(extra)};
    row.match = row.expected ? row.result.verdict == RsResult::yes && row.result.oracle_ok : row.result.verdict == RsResult::no;
    t.rows.push_back(row);
  }
  rep.tables.push_back(classification_table_rows(t));
  rep.sections.push_back({"classification", classification_checks(t, ctx)});

  std::uint64_t checks = 0;
  for (const auto& s : rep.sections) checks += s.checks.size();
  rep.summary["sections"] = std::to_string(rep.sections.size());
  rep.summary["checks"] = std::to_string(checks);
  return rep;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"jumps", "classify", "stable-search", "verify", "selftest"};
  return c;
}

Report run(const std::string& command, const Config& cfg, const Overrides& ov, const Executor& exec) {
  if (command == "jumps") return cmd_jumps(cfg, ov, exec);
  if (command == "classify") return cmd_classify(cfg, ov, exec);
  if (command == "stable-search") return cmd_stable_search(cfg, ov, exec);
  if (command == "verify") return cmd_verify(cfg, ov, exec);
  if (command == "selftest") return cmd_selftest(cfg, ov, exec);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace epitheta::cli
