// Command line front end for the vqb shared library. Everything numeric
// flows through the C API in vqb.h; this file only parses arguments and
// formats JSON/CSV output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqb.h"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct ChoiDeleter {
  void operator()(vqb_choi* c) const { vqb_choi_free(c); }
};
struct SplitDeleter {
  void operator()(vqb_split* s) const { vqb_split_free(s); }
};
using ChoiPtr = std::unique_ptr<vqb_choi, ChoiDeleter>;
using SplitPtr = std::unique_ptr<vqb_split, SplitDeleter>;

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(code);
}

void check(vqb_status status, const std::string& what) {
  if (status == VQB_OK) return;
  const std::string detail = vqb_last_error();
  const int code =
      (status == VQB_ERR_CONSTRAINT || status == VQB_ERR_NOT_CONVERGED)
          ? kExitVerification
          : kExitUsage;
  die(code, what + ": " + vqb_status_name(status) +
                (detail.empty() ? "" : " (" + detail + ")"));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitUsage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitUsage, "cannot write " + path);
  out << text;
}

// A map argument is either one of the built-in names or a path to a Choi
// JSON file.
ChoiPtr load_choi(const std::string& spec) {
  vqb_choi* raw = nullptr;
  if (spec == "broadcaster") {
    check(vqb_choi_optimal_virtual_broadcaster(&raw), "broadcaster");
  } else if (spec == "cloner") {
    check(vqb_choi_phase_covariant_cloner(&raw), "cloner");
  } else if (spec == "canonical") {
    check(vqb_choi_canonical_broadcaster(&raw), "canonical");
  } else if (spec == "universal-cloner") {
    check(vqb_choi_universal_cloner(&raw), "universal-cloner");
  } else {
    check(vqb_choi_from_json(read_file(spec).c_str(), &raw), spec);
  }
  return ChoiPtr(raw);
}

json choi_json(const vqb_choi* c) {
  char* text = nullptr;
  check(vqb_choi_to_json(c, &text), "serialize");
  json j = json::parse(text);
  vqb_string_free(text);
  return j;
}

void parse_observable(const std::string& spec, double re[4], double im[4]) {
  for (int i = 0; i < 4; ++i) re[i] = im[i] = 0.0;
  if (spec == "sx") {
    re[1] = re[2] = 1.0;
  } else if (spec == "sy") {
    im[1] = -1.0;
    im[2] = 1.0;
  } else if (spec == "sz") {
    re[0] = 1.0;
    re[3] = -1.0;
  } else {
    json j;
    try {
      j = json::parse(read_file(spec));
      const auto jre = j.at("re").get<std::vector<std::vector<double>>>();
      const auto jim = j.at("im").get<std::vector<std::vector<double>>>();
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
          re[i * 2 + k] = jre.at(i).at(k);
          im[i * 2 + k] = jim.at(i).at(k);
        }
    } catch (const std::exception& e) {
      die(kExitUsage, "observable " + spec + ": " + e.what());
    }
  }
}

double observable_expectation(const double o_re[4], const double o_im[4],
                              const double m_re[4], const double m_im[4]) {
  // Re Tr[O M] for 2x2 Hermitian O, M
  double v = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      v += o_re[i * 2 + k] * m_re[k * 2 + i] - o_im[i * 2 + k] * m_im[k * 2 + i];
    }
  return v;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Tolerances and iteration budgets with their documented defaults; a JSON
// config file (--config or VQB_CONFIG) overrides them, flags override both.
struct Config {
  double tol = 1e-10;
  int minimize_starts = 32;
  int grid_points = 41;
  int diamond_starts = 64;
  int broadcast_radii = 10;
  int broadcast_angles = 10;
  double c_range = 2.0;
  int local_samples = 200;
  int local_starts = 4;
  std::uint64_t seed = 7;

  void load(const std::string& path) {
    json j;
    try {
      j = json::parse(read_file(path));
    } catch (const std::exception& e) {
      die(kExitUsage, std::string("config: ") + e.what());
    }
    tol = j.value("tol", tol);
    minimize_starts = j.value("minimize_starts", minimize_starts);
    grid_points = j.value("grid_points", grid_points);
    diamond_starts = j.value("diamond_starts", diamond_starts);
    broadcast_radii = j.value("broadcast_radii", broadcast_radii);
    broadcast_angles = j.value("broadcast_angles", broadcast_angles);
    c_range = j.value("c_range", c_range);
    local_samples = j.value("local_samples", local_samples);
    local_starts = j.value("local_starts", local_starts);
    seed = j.value("seed", seed);
  }
};

json params_json(const double re[6], const double im[6]) {
  json j;
  const char* names[6] = {"c1", "c2", "c3", "c4", "c5", "c6"};
  for (int i = 0; i < 6; ++i) j[names[i]] = {re[i], im[i]};
  return j;
}

int cmd_derive_family(const std::string& choi_spec, std::uint64_t random_seed,
                      bool use_random, double tol) {
  ChoiPtr c;
  if (use_random) {
    vqb_choi* raw = nullptr;
    check(vqb_choi_random_hermitian(random_seed, &raw), "random seed");
    c = ChoiPtr(raw);
  } else {
    c = load_choi(choi_spec);
  }
  vqb_choi* stage = nullptr;
  check(vqb_choi_twirl(c.get(), VQB_TWIRL_PHASE, &stage), "phase twirl");
  ChoiPtr t1(stage);
  check(vqb_choi_twirl(t1.get(), VQB_TWIRL_SWAP, &stage), "swap twirl");
  ChoiPtr t2(stage);
  check(vqb_choi_twirl(t2.get(), VQB_TWIRL_FLIP, &stage), "flip twirl");
  ChoiPtr t3(stage);

  double re[6], im[6], residual = 0.0;
  check(vqb_choi_extract_params(t3.get(), tol, re, im, &residual), "extract");
  json out;
  out["params"] = params_json(re, im);
  out["residual"] = residual;
  out["choi"] = choi_json(t3.get());
  emit(out);
  return 0;
}

int cmd_minimize(const Config& cfg) {
  vqb_minimize_result r;
  check(vqb_minimize_trace_norm(cfg.minimize_starts, cfg.seed, cfg.grid_points, &r),
        "minimize");
  json out;
  out["value"] = r.value;
  out["argmin"] = {{"c1", r.c1}, {"c4", r.c4}, {"t", r.t}};
  out["grid_certificate"] = {{"min_value", r.grid_min_value},
                             {"argmin", {r.grid_argmin[0], r.grid_argmin[1],
                                         r.grid_argmin[2]}},
                             {"consistent", r.grid_consistent != 0}};
  out["restarts_used"] = r.restarts_used;
  emit(out);
  return 0;
}

int cmd_decompose(const std::string& spec, const std::string& out_plus,
                  const std::string& out_minus) {
  const ChoiPtr c = load_choi(spec);
  vqb_split* raw = nullptr;
  check(vqb_split_pos_neg(c.get(), &raw), "decompose");
  SplitPtr s(raw);
  double a = 0.0, b = 0.0, recon = 0.0;
  int tp_exact = 0, parts_cptp = 0;
  vqb_split_weights(s.get(), &a, &b);
  vqb_split_flags(s.get(), &tp_exact, &parts_cptp, &recon);
  vqb_choi* part = nullptr;
  check(vqb_split_part(s.get(), 1, &part), "positive part");
  ChoiPtr plus(part);
  check(vqb_split_part(s.get(), 0, &part), "negative part");
  ChoiPtr minus(part);

  json out;
  out["a"] = a;
  out["b"] = b;
  out["a_plus_b"] = a + b;
  out["tp_exact"] = tp_exact != 0;
  out["parts_cptp"] = parts_cptp != 0;
  out["recon_residual"] = recon;
  out["e_plus"] = choi_json(plus.get());
  out["e_minus"] = choi_json(minus.get());
  if (!out_plus.empty()) write_file(out_plus, out["e_plus"].dump());
  if (!out_minus.empty()) write_file(out_minus, out["e_minus"].dump());
  emit(out);
  return 0;
}

double max_entry_diff(const vqb_choi* a, const vqb_choi* b) {
  const json ja = choi_json(a), jb = choi_json(b);
  double d = 0.0;
  for (const char* key : {"re", "im"}) {
    const auto& ma = ja.at(key);
    const auto& mb = jb.at(key);
    for (std::size_t i = 0; i < ma.size(); ++i)
      for (std::size_t k = 0; k < ma[i].size(); ++k)
        d = std::max(d, std::abs(ma[i][k].get<double>() - mb[i][k].get<double>()));
  }
  return d;
}

int cmd_verify(const std::string& spec, std::vector<std::string> checks,
               const Config& cfg) {
  const ChoiPtr c = load_choi(spec);
  if (checks.empty()) checks = {"tp", "hp"};

  json out;
  bool all_pass = true;
  int flag = 0;
  check(vqb_choi_is_tp(c.get(), cfg.tol, &flag), "tp");
  out["tp"] = flag != 0;
  check(vqb_choi_is_hp(c.get(), cfg.tol, &flag), "hp");
  out["hp"] = flag != 0;
  check(vqb_choi_is_cp(c.get(), cfg.tol, &flag), "cp");
  out["cp"] = flag != 0;
  check(vqb_choi_verify_classic(c.get(), cfg.tol, &flag), "classic");
  out["classic"] = flag != 0;

  {
    char* text = nullptr;
    check(vqb_choi_verify_broadcast(c.get(), cfg.broadcast_radii,
                                    cfg.broadcast_angles, 1e-12, &text),
          "broadcast");
    out["broadcast"] = json::parse(text);
    vqb_string_free(text);
  }
  {
    json sym;
    const std::pair<const char*, vqb_twirl_kind> kinds[] = {
        {"phase", VQB_TWIRL_PHASE}, {"swap", VQB_TWIRL_SWAP},
        {"flip", VQB_TWIRL_FLIP}};
    bool fixed_point = true;
    for (const auto& [name, kind] : kinds) {
      vqb_choi* t = nullptr;
      check(vqb_choi_twirl(c.get(), kind, &t), name);
      ChoiPtr tw(t);
      const double diff = max_entry_diff(c.get(), tw.get());
      sym[name] = diff;
      fixed_point = fixed_point && diff <= 1e-10;
    }
    sym["fixed_point"] = fixed_point;
    out["symmetry"] = sym;
  }

  for (const std::string& name : checks) {
    bool ok;
    if (name == "tp" || name == "hp" || name == "cp" || name == "classic") {
      ok = out[name].get<bool>();
    } else if (name == "broadcast") {
      ok = out["broadcast"]["pass"].get<bool>();
    } else if (name == "symmetry") {
      ok = out["symmetry"]["fixed_point"].get<bool>();
    } else {
      die(kExitUsage, "unknown check: " + name);
    }
    all_pass = all_pass && ok;
  }
  out["checked"] = checks;
  out["pass"] = all_pass;
  emit(out);
  return all_pass ? 0 : kExitVerification;
}

int cmd_distance(const std::string& spec_a, const std::string& spec_b,
                 const Config& cfg) {
  const ChoiPtr a = load_choi(spec_a);
  const ChoiPtr b = load_choi(spec_b);
  vqb_distance_result r;
  check(vqb_diamond_distance(a.get(), b.get(), cfg.diamond_starts, cfg.seed, 1e-9,
                             &r),
        "distance");
  json out;
  out["value"] = r.value;
  out["lower_cert"] = r.lower_cert;
  out["upper_cert"] = r.upper_cert;
  out["certified"] = r.certified != 0;
  emit(out);
  return 0;
}

int cmd_simulate(const std::string& spec, double r, double phi,
                 const std::string& o1_spec, const std::string& o2_spec,
                 long long shots, const Config& cfg) {
  const ChoiPtr c = load_choi(spec);
  vqb_split* raw = nullptr;
  check(vqb_split_pos_neg(c.get(), &raw), "decompose");
  SplitPtr s(raw);
  double a = 0.0, b = 0.0;
  vqb_split_weights(s.get(), &a, &b);

  double o1_re[4], o1_im[4], o2_re[4], o2_im[4];
  parse_observable(o1_spec, o1_re, o1_im);
  parse_observable(o2_spec, o2_re, o2_im);

  vqb_simulate_result est;
  check(vqb_simulate_virtual(s.get(), r, phi, o1_re, o1_im, o2_re, o2_im, shots,
                             cfg.seed, &est),
        "simulate");

  const double rr = r, pp = phi;
  const double rho_re[4] = {0.5, 0.5 * rr * std::cos(pp), 0.5 * rr * std::cos(pp),
                            0.5};
  const double rho_im[4] = {0.0, -0.5 * rr * std::sin(pp), 0.5 * rr * std::sin(pp),
                            0.0};
  double m_re[4], m_im[4];
  json out;
  check(vqb_choi_marginal(c.get(), rho_re, rho_im, 1, m_re, m_im), "marginal");
  out["exact1"] = observable_expectation(o1_re, o1_im, m_re, m_im);
  check(vqb_choi_marginal(c.get(), rho_re, rho_im, 2, m_re, m_im), "marginal");
  out["exact2"] = observable_expectation(o2_re, o2_im, m_re, m_im);
  out["est1"] = est.est1;
  out["est2"] = est.est2;
  out["plus_fraction"] = est.plus_fraction;
  out["a"] = a;
  out["b"] = b;
  out["shots"] = shots;
  out["seed"] = cfg.seed;
  emit(out);
  return 0;
}

int cmd_sample_report(const std::string& spec, double eps1, double delta1,
                      double eps2, double delta2, int experiment_reps,
                      const std::string& csv_path, const std::string& format,
                      const Config& cfg) {
  const ChoiPtr c = load_choi(spec);
  vqb_split* raw = nullptr;
  check(vqb_split_pos_neg(c.get(), &raw), "decompose");
  SplitPtr s(raw);
  double a = 0.0, b = 0.0;
  vqb_split_weights(s.get(), &a, &b);

  vqb_cost_report r;
  check(vqb_sample_cost_report(a, b, eps1, delta1, eps2, delta2, cfg.c_range, &r),
        "sample report");
  json out;
  out["a"] = a;
  out["b"] = b;
  out["n1"] = r.n1;
  out["n2"] = r.n2;
  out["n_q"] = r.n_q;
  out["virtual_copies"] = r.virtual_copies;
  out["direct_copies"] = r.direct_copies;
  out["overhead"] = r.overhead;
  out["ratio"] = r.ratio;
  out["sample_efficient"] = r.sample_efficient != 0;

  if (experiment_reps > 0) {
    // sigma_x on |+>, the worked estimation example
    double o_re[4], o_im[4];
    parse_observable("sx", o_re, o_im);
    std::vector<double> errors(experiment_reps);
    vqb_failure_result f;
    check(vqb_empirical_failure_rate(s.get(), 1.0, 0.0, o_re, o_im, eps1,
                                     r.virtual_copies, experiment_reps, cfg.seed,
                                     errors.data(), &f),
          "virtual experiment");
    out["experiment"]["virtual"] = {{"failure_rate", f.failure_rate},
                                    {"mean_estimate", f.mean_estimate},
                                    {"exact_value", f.exact_value},
                                    {"shots", r.virtual_copies}};
    vqb_failure_result fd;
    check(vqb_empirical_failure_rate(nullptr, 1.0, 0.0, o_re, o_im, eps1, r.n1,
                                     experiment_reps, cfg.seed + 1, nullptr, &fd),
          "direct experiment");
    out["experiment"]["direct"] = {{"failure_rate", fd.failure_rate},
                                   {"mean_estimate", fd.mean_estimate},
                                   {"exact_value", fd.exact_value},
                                   {"shots", r.n1}};
    std::ostringstream csv;
    csv << "repetition,error\n";
    for (int i = 0; i < experiment_reps; ++i) csv << i << "," << errors[i] << "\n";
    if (!csv_path.empty()) write_file(csv_path, csv.str());
    if (format == "csv") {
      std::cout << csv.str();
      return 0;
    }
  }
  emit(out);
  return 0;
}

int cmd_baseline(const Config& cfg) {
  vqb_choi* raw = nullptr;
  check(vqb_choi_canonical_broadcaster(&raw), "canonical");
  ChoiPtr canonical(raw);
  check(vqb_choi_universal_cloner(&raw), "universal cloner");
  ChoiPtr cloner(raw);

  json out;
  double lower = 0.0, upper = 0.0;
  int certified = 0;
  check(vqb_base_norm_bounds(canonical.get(), &lower, &upper, &certified), "cost");
  out["cost"] = {{"lower", lower}, {"upper", upper}, {"certified", certified != 0}};

  vqb_distance_result d;
  check(vqb_diamond_distance(canonical.get(), cloner.get(), cfg.diamond_starts,
                             cfg.seed, 1e-9, &d),
        "distance");
  out["diamond_to_universal_cloner"] = {{"value", d.value},
                                        {"lower_cert", d.lower_cert},
                                        {"upper_cert", d.upper_cert},
                                        {"certified", d.certified != 0}};
  double dev = 0.0;
  check(vqb_choi_broadcast_deviation_random(canonical.get(), 100, cfg.seed, &dev),
        "broadcast");
  out["broadcast_deviation_random_states"] = dev;

  double mean = 0.0, spread = 0.0;
  check(vqb_choi_fidelity_scan(cloner.get(), 100, 1, cfg.seed, &mean, &spread),
        "fidelity");
  out["universal_cloner_fidelity"] = {{"mean", mean}, {"spread", spread}};

  vqb_cost_report r;
  check(vqb_sample_cost_report(1.5, 0.5, 0.05, 0.05, 0.05, 0.05, cfg.c_range, &r),
        "sample report");
  out["sample_ratio"] = r.ratio;
  emit(out);
  return 0;
}

int cmd_reproduce(const Config& cfg) {
  json out;
  bool all_ok = true;

  {  // family span of triple-twirled random operators
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      vqb_choi* raw = nullptr;
      check(vqb_choi_random_hermitian(cfg.seed + k, &raw), "random");
      ChoiPtr c(raw);
      vqb_choi* stage = nullptr;
      check(vqb_choi_twirl(c.get(), VQB_TWIRL_PHASE, &stage), "twirl");
      ChoiPtr t1(stage);
      check(vqb_choi_twirl(t1.get(), VQB_TWIRL_SWAP, &stage), "twirl");
      ChoiPtr t2(stage);
      check(vqb_choi_twirl(t2.get(), VQB_TWIRL_FLIP, &stage), "twirl");
      ChoiPtr t3(stage);
      double re[6], im[6], resid = 0.0;
      check(vqb_choi_extract_params(t3.get(), 1e-9, re, im, &resid), "extract");
      worst = std::max(worst, resid);
    }
    out["family_span_residual"] = worst;
    all_ok = all_ok && worst <= 1e-12;
  }

  vqb_minimize_result m;
  check(vqb_minimize_trace_norm(cfg.minimize_starts, cfg.seed, cfg.grid_points, &m),
        "minimize");
  out["min_trace_norm"] = m.value;
  out["argmin"] = {{"c1", m.c1}, {"c4", m.c4}, {"t", m.t}};
  out["grid_consistent"] = m.grid_consistent != 0;
  all_ok = all_ok && std::abs(m.value - 10.0 / 3.0) < 1e-7 && m.grid_consistent;

  vqb_choi* raw = nullptr;
  check(vqb_choi_optimal_virtual_broadcaster(&raw), "broadcaster");
  ChoiPtr broadcaster(raw);
  check(vqb_choi_phase_covariant_cloner(&raw), "cloner");
  ChoiPtr cloner(raw);
  check(vqb_choi_canonical_broadcaster(&raw), "canonical");
  ChoiPtr canonical(raw);
  check(vqb_choi_universal_cloner(&raw), "universal");
  ChoiPtr universal(raw);

  double a = 0.0, b = 0.0;
  {
    vqb_split* sraw = nullptr;
    check(vqb_split_pos_neg(broadcaster.get(), &sraw), "split");
    SplitPtr split(sraw);
    vqb_split_weights(split.get(), &a, &b);
    vqb_choi* plus = nullptr;
    check(vqb_split_part(split.get(), 1, &plus), "positive part");
    ChoiPtr eplus(plus);
    out["split"] = {{"a", a}, {"b", b}};
    out["cloner_matches_positive_part"] =
        max_entry_diff(eplus.get(), cloner.get()) <= 1e-12;
    all_ok = all_ok && out["cloner_matches_positive_part"].get<bool>();

    double lower = 0.0, upper = 0.0;
    int certified = 0;
    check(vqb_base_norm_bounds(broadcaster.get(), &lower, &upper, &certified),
          "cost");
    out["sim_cost"] = upper;
    out["sim_cost_bracket"] = {lower, upper};
    all_ok = all_ok && certified && std::abs(upper - 5.0 / 3.0) < 1e-9;

    double mean = 0.0, spread = 0.0;
    check(vqb_choi_fidelity_scan(cloner.get(), 36, 0, cfg.seed, &mean, &spread),
          "fidelity");
    out["cloner_equatorial_fidelity"] = {{"mean", mean}, {"spread", spread}};
    all_ok = all_ok && spread <= 1e-10;
  }

  {
    vqb_distance_result d;
    check(vqb_diamond_distance(broadcaster.get(), cloner.get(), cfg.diamond_starts,
                               cfg.seed, 1e-9, &d),
          "distance");
    out["diamond_to_cloner"] = d.value;
    out["diamond_to_cloner_bracket"] = {d.lower_cert, d.upper_cert};
    all_ok = all_ok && d.certified && std::abs(d.value - 2.0 / 3.0) < 1e-6;

    check(vqb_diamond_distance(canonical.get(), universal.get(),
                               cfg.diamond_starts, cfg.seed, 1e-9, &d),
          "distance");
    out["baseline_diamond"] = d.value;
    all_ok = all_ok && std::abs(d.value - 1.0) < 1e-6;
  }

  {
    double lower = 0.0, upper = 0.0;
    int certified = 0;
    check(vqb_base_norm_bounds(canonical.get(), &lower, &upper, &certified),
          "baseline cost");
    out["baseline_cost"] = upper;
    all_ok = all_ok && certified && std::abs(upper - 2.0) < 1e-9;
    double dev = 0.0;
    check(vqb_choi_broadcast_deviation_random(canonical.get(), 100, cfg.seed, &dev),
          "baseline broadcast");
    out["baseline_broadcast_deviation"] = dev;
    all_ok = all_ok && dev <= 1e-12;
  }

  {
    vqb_cost_report r;
    check(vqb_sample_cost_report(a, b, 0.05, 0.05, 0.05, 0.05, cfg.c_range, &r),
          "sample report");
    out["sample_ratio"] = r.ratio;
    all_ok = all_ok && std::abs(r.ratio - 25.0 / 18.0) < 1e-9 && r.ratio > 1.0;
    check(vqb_sample_cost_report(1.5, 0.5, 0.05, 0.05, 0.05, 0.05, cfg.c_range, &r),
          "baseline sample report");
    out["baseline_sample_ratio"] = r.ratio;
    all_ok = all_ok && std::abs(r.ratio - 2.0) < 1e-9;
  }

  {
    long long n = 0;
    check(vqb_hoeffding_copies(0.05, 0.05, cfg.c_range, &n), "hoeffding");
    const long long shots =
        static_cast<long long>(std::ceil((a + b) * (a + b) * n - 1e-9));
    double o_re[4], o_im[4];
    parse_observable("sx", o_re, o_im);
    vqb_split* sraw = nullptr;
    check(vqb_split_pos_neg(broadcaster.get(), &sraw), "split");
    SplitPtr split(sraw);
    vqb_failure_result f;
    check(vqb_empirical_failure_rate(split.get(), 1.0, 0.0, o_re, o_im, 0.05,
                                     shots, 500, cfg.seed, nullptr, &f),
          "monte carlo");
    out["monte_carlo"] = {{"shots", shots},
                          {"repetitions", 500},
                          {"failure_rate", f.failure_rate},
                          {"mean_estimate", f.mean_estimate},
                          {"exact_value", f.exact_value}};
    all_ok = all_ok && f.failure_rate <= 0.05 + 0.03 &&
             std::abs(f.mean_estimate - f.exact_value) <= 0.005;
  }

  {
    vqb_local_optimality_report r;
    check(vqb_cloner_local_optimality(cfg.local_samples, cfg.local_starts,
                                      cfg.seed, 1e-6, &r),
          "local optimality");
    out["cloner_local_optimality"] = {{"min_distance", r.min_distance},
                                      {"max_distance", r.max_distance},
                                      {"pass", r.pass != 0}};
    all_ok = all_ok && r.pass;
  }

  out["all_checks_pass"] = all_ok;
  emit(out);
  return all_ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual qubit broadcasting laboratory"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->envname("VQB_CONFIG");
  app.callback([&] {
    if (!config_path.empty()) cfg.load(config_path);
  });

  // derive-family
  std::string df_choi = "broadcaster";
  std::uint64_t df_seed = 0;
  double df_tol = 1e-10;
  auto* derive = app.add_subcommand(
      "derive-family", "symmetrize a Choi operator and read the family "
                       "coefficients");
  auto* df_choi_opt = derive->add_option("--choi", df_choi, "input map");
  auto* df_rand_opt =
      derive->add_option("--random-seed", df_seed, "twirl a random Hermitian");
  derive->add_option("--tol", df_tol, "residual tolerance");

  // minimize
  auto* minimize = app.add_subcommand(
      "minimize", "minimize the Choi trace norm over the constrained family");
  minimize->add_option("--starts", cfg.minimize_starts, "restarts");
  minimize->add_option("--seed", cfg.seed, "seed");
  minimize->add_option("--grid", cfg.grid_points, "grid points per axis");

  // decompose
  std::string dc_choi = "broadcaster", dc_plus, dc_minus;
  auto* decompose =
      app.add_subcommand("decompose", "positive/negative split of a map");
  decompose->add_option("--choi", dc_choi, "input map");
  decompose->add_option("--out-plus", dc_plus, "write E+ to file");
  decompose->add_option("--out-minus", dc_minus, "write E- to file");

  // verify
  std::string vf_choi = "broadcaster";
  std::vector<std::string> vf_checks;
  auto* verify = app.add_subcommand("verify", "structural report for a map");
  verify->add_option("--choi", vf_choi, "input map");
  verify->add_option("--check", vf_checks,
                     "gate on: tp hp cp classic broadcast symmetry "
                     "(default: tp hp)");
  verify->add_option("--radii", cfg.broadcast_radii, "broadcast grid radii");
  verify->add_option("--angles", cfg.broadcast_angles, "broadcast grid angles");
  verify->add_option("--tol", cfg.tol, "predicate tolerance");

  // distance
  std::string ds_a = "broadcaster", ds_b = "cloner";
  auto* distance =
      app.add_subcommand("distance", "diamond distance with certificates");
  distance->add_option("--a", ds_a, "first map");
  distance->add_option("--b", ds_b, "second map");
  distance->add_option("--starts", cfg.diamond_starts, "search restarts");
  distance->add_option("--seed", cfg.seed, "seed");

  // simulate
  std::string sm_choi = "broadcaster", sm_o1 = "sx", sm_o2 = "sx";
  double sm_r = 1.0, sm_phi = 0.0;
  long long sm_shots = 100000;
  auto* simulate =
      app.add_subcommand("simulate", "quasiprobability estimation run");
  simulate->add_option("--choi", sm_choi, "map to simulate");
  simulate->add_option("--r", sm_r, "input radius");
  simulate->add_option("--phi", sm_phi, "input angle");
  simulate->add_option("--o1", sm_o1, "observable on output 1 (sx|sy|sz|file)");
  simulate->add_option("--o2", sm_o2, "observable on output 2");
  simulate->add_option("--shots", sm_shots, "shots");
  simulate->add_option("--seed", cfg.seed, "seed");

  // sample-report
  std::string sr_choi = "broadcaster", sr_csv, sr_format = "json";
  double sr_eps1 = 0.05, sr_d1 = 0.05, sr_eps2 = 0.05, sr_d2 = 0.05;
  int sr_reps = 0;
  auto* sample = app.add_subcommand(
      "sample-report", "copy-count comparison against direct distribution");
  sample->add_option("--choi", sr_choi, "map to decompose");
  sample->add_option("--eps1", sr_eps1, "accuracy for party 1");
  sample->add_option("--delta1", sr_d1, "failure bound for party 1");
  sample->add_option("--eps2", sr_eps2, "accuracy for party 2");
  sample->add_option("--delta2", sr_d2, "failure bound for party 2");
  sample->add_option("--c", cfg.c_range, "outcome range");
  sample->add_option("--experiment", sr_reps,
                     "run the repeated-estimation experiment");
  sample->add_option("--csv", sr_csv, "write per-repetition errors to file");
  sample->add_option("--format", sr_format, "json|csv");
  sample->add_option("--seed", cfg.seed, "seed");

  // baseline
  auto* baseline = app.add_subcommand(
      "baseline", "fully covariant broadcaster and universal cloner numbers");
  baseline->add_option("--seed", cfg.seed, "seed");
  baseline->add_option("--starts", cfg.diamond_starts, "search restarts");

  // reproduce-paper
  auto* reproduce = app.add_subcommand(
      "reproduce-paper", "run every headline check and emit one JSON summary");
  reproduce->add_option("--seed", cfg.seed, "seed");

  CLI11_PARSE(app, argc, argv);

  if (derive->parsed()) {
    if (*df_rand_opt && *df_choi_opt)
      die(kExitUsage, "derive-family: pass either --choi or --random-seed");
    return cmd_derive_family(df_choi, df_seed, static_cast<bool>(*df_rand_opt),
                             df_tol);
  }
  if (minimize->parsed()) return cmd_minimize(cfg);
  if (decompose->parsed()) return cmd_decompose(dc_choi, dc_plus, dc_minus);
  if (verify->parsed()) return cmd_verify(vf_choi, vf_checks, cfg);
  if (distance->parsed()) return cmd_distance(ds_a, ds_b, cfg);
  if (simulate->parsed())
    return cmd_simulate(sm_choi, sm_r, sm_phi, sm_o1, sm_o2, sm_shots, cfg);
  if (sample->parsed())
    return cmd_sample_report(sr_choi, sr_eps1, sr_d1, sr_eps2, sr_d2, sr_reps,
                             sr_csv, sr_format, cfg);
  if (baseline->parsed()) return cmd_baseline(cfg);
  if (reproduce->parsed()) return cmd_reproduce(cfg);
  return kExitUsage;
}
