#include "corrdyn/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "corrdyn/bundle.hpp"
#include "corrdyn/corr_core.hpp"
#include "corrdyn/cycles.hpp"
#include "corrdyn/motion.hpp"
#include "corrdyn/parallel.hpp"
#include "corrdyn/render.hpp"
#include "corrdyn/rng.hpp"
#include "corrdyn/solenoid.hpp"
#include "corrdyn/verify.hpp"

namespace corrdyn {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> word;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch < '0' || ch > '9') throw ParameterError("branch word must be digits");
    word.push_back(ch - '0');
  }
  if (word.empty()) throw ParameterError("empty branch word");
  return word;
}

void write_output(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  out << contents;
  if (!out) throw IoError("short write to " + path);
}

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CORRDYN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return resolve_thread_count(0);
}

struct CommonOpts {
  int p = 6;
  int q = 2;
  std::string c_text = "0+0i";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string config_path;

  CorrespondenceParams params() const { return {p, q, parse_complex(c_text)}; }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  // Config-file entries are injected before the user flags, so repeated
  // options must resolve to the last occurrence.
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  cmd->add_option("--config", opts.config_path, "key=value file; flags override it");
  cmd->add_option("--p", opts.p, "numerator exponent p")->check(CLI::PositiveNumber);
  cmd->add_option("--q", opts.q, "denominator exponent q")->check(CLI::PositiveNumber);
  cmd->add_option("--c", opts.c_text, "parameter c in a+bi form");
  cmd->add_option("--seed", opts.seed, "seed for every random stream");
  cmd->add_option("--threads", opts.threads,
                  "worker threads (0 = CORRDYN_THREADS or all cores)");
}

nlohmann::json cycle_json(const CorrespondenceParams& params, const Cycle& cyc) {
  nlohmann::json j;
  j["p"] = params.p();
  j["q"] = params.q();
  j["c"] = {params.c().real(), params.c().imag()};
  j["period"] = cyc.period();
  j["symbols"] = cyc.symbols;
  auto pts = nlohmann::json::array();
  for (const cplx& z : cyc.points) pts.push_back({z.real(), z.imag()});
  j["points"] = std::move(pts);
  j["multiplier"] = {cyc.multiplier.real(), cyc.multiplier.imag()};
  j["kind"] = cyc.kind == CycleKind::repelling ? "repelling" : "attracting";
  return j;
}

std::optional<std::string> cache_lookup(const std::string& path,
                                        const nlohmann::json& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    bool match = true;
    for (const auto& [k, v] : key.items()) {
      if (!j.contains(k) || j[k] != v) {
        match = false;
        break;
      }
    }
    if (match) return line;
  }
  return std::nullopt;
}

void cache_append(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open cycle cache " + path);
  out << j.dump() << '\n';
}

MotionConfig config_for(const CorrespondenceParams& base, double eps_override) {
  std::vector<cplx> cloud;
  for (int i = 0; i < 64; ++i) cloud.push_back(std::polar(1.0, kTwoPi * i / 64.0));
  MotionConfig cfg = estimate_motion_config(base, cloud);
  if (eps_override > 0.0) {
    cfg.eps = eps_override;
    cfg.U_radius = cfg.eps * (1.0 - cfg.lambda) / (6.0 * cfg.ell);
  }
  return cfg;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  if (text.empty()) throw ParameterError("empty complex literal");
  const bool has_i = text.back() == 'i' || text.back() == 'I';
  std::string body = has_i ? text.substr(0, text.size() - 1) : text;
  if (body.empty()) throw ParameterError("malformed complex literal: " + text);

  auto to_double = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParameterError("malformed complex literal: " + text);
    }
    if (used != s.size()) throw ParameterError("malformed complex literal: " + text);
    return v;
  };

  // Split at the last top-level sign (not part of an exponent, not leading).
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char ch = body[i];
    if (ch != '+' && ch != '-') continue;
    const char prev = body[i - 1];
    if (prev == 'e' || prev == 'E') continue;
    split = i;
    break;
  }
  if (!has_i) {
    return {to_double(body), 0.0};
  }
  if (split == std::string::npos) {
    return {0.0, to_double(body)};
  }
  return {to_double(body.substr(0, split)), to_double(body.substr(split))};
}

std::string format_complex(std::complex<double> z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) entries.emplace_back(key, value);
  }
  return entries;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

namespace {

// Splices "--key value" pairs from a --config file in right after the
// subcommand token, so explicit flags (which come later) take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config_file(config_path)) {
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  std::vector<std::string> out;
  out.reserve(args.size() + injected.size());
  bool spliced = false;
  for (const std::string& a : args) {
    out.push_back(a);
    if (!spliced && !a.empty() && a[0] != '-') {
      out.insert(out.end(), injected.begin(), injected.end());
      spliced = true;
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<const char*> argv_vec;
  argv_vec.push_back("corrdyn");
  for (const auto& a : args) argv_vec.push_back(a.c_str());
  const int argc = static_cast<int>(argv_vec.size());
  const char* const* argv = argv_vec.data();

  CLI::App app{"dynamics of the correspondence family (w-c)^q = z^p"};
  app.require_subcommand(1);

  // render-julia ------------------------------------------------------------
  auto* render_cmd = app.add_subcommand("render-julia", "survival raster of the Julia set");
  CommonOpts render_opts;
  add_common(render_cmd, render_opts);
  int render_size = 512;
  int render_depth = 24;
  double render_tol = 0.01;
  double render_width = 0.0;
  std::string render_center = "0+0i";
  std::string render_out = "julia.pgm";
  render_cmd->add_option("--size", render_size, "pixels per side")->check(CLI::PositiveNumber);
  render_cmd->add_option("--depth", render_depth, "orbit search depth");
  render_cmd->add_option("--tol", render_tol, "annulus fattening tolerance");
  render_cmd->add_option("--width", render_width, "viewport width (0 = 2.2 s_c)");
  render_cmd->add_option("--center", render_center, "viewport center a+bi");
  render_cmd->add_option("--out", render_out, "output PGM path");

  // sample-julia --------------------------------------------------------------
  auto* sample_cmd = app.add_subcommand("sample-julia", "backward-orbit samples of the Julia set");
  CommonOpts sample_opts;
  add_common(sample_cmd, sample_opts);
  std::size_t sample_n = 10000;
  std::size_t sample_burn = 100;
  std::string sample_out = "-";
  sample_cmd->add_option("--n", sample_n, "points to emit");
  sample_cmd->add_option("--burn-in", sample_burn, "accepted steps to discard");
  sample_cmd->add_option("--out", sample_out, "CSV path or - for stdout");

  // dual-julia ---------------------------------------------------------------
  auto* dual_cmd = app.add_subcommand("dual-julia", "forward chaos game and attracting cycles");
  CommonOpts dual_opts;
  add_common(dual_cmd, dual_opts);
  std::size_t dual_n = 2000;
  int dual_max_period = 3;
  std::string dual_out = "-";
  std::string dual_cycles_out;
  dual_cmd->add_option("--n", dual_n, "points to emit");
  dual_cmd->add_option("--max-period", dual_max_period, "attracting-cycle search depth");
  dual_cmd->add_option("--out", dual_out, "CSV path or - for stdout");
  dual_cmd->add_option("--cycles-out", dual_cycles_out, "JSON-lines path for cycles");

  // bounds ---------------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "trapping annulus radii");
  CommonOpts bounds_opts;
  add_common(bounds_cmd, bounds_opts);

  // cycles ----------------------------------------------------------------------
  auto* cycles_cmd = app.add_subcommand("cycles", "periodic orbits: census, solve, continue");
  CommonOpts cycles_opts;
  add_common(cycles_cmd, cycles_opts);
  int census_n = 0;
  std::string cycles_symbols;
  std::string cycles_seed_point = "0.9+0i";
  std::string cycles_continue_to;
  double cycles_max_step = 0.005;
  std::string cycles_cache;
  cycles_cmd->add_option("--census", census_n, "list period-n points on the circle (c=0)");
  cycles_cmd->add_option("--symbols", cycles_symbols, "branch word, e.g. 0,1,0 or 010");
  cycles_cmd->add_option("--seed-point", cycles_seed_point, "Newton start a+bi");
  cycles_cmd->add_option("--continue-to", cycles_continue_to, "target c for continuation");
  cycles_cmd->add_option("--max-step", cycles_max_step, "largest continuation step");
  cycles_cmd->add_option("--cache", cycles_cache, "JSON-lines cycle cache file");

  // solenoid ---------------------------------------------------------------------
  auto* sol_cmd = app.add_subcommand("solenoid", "solid-torus iterates and symbolic points");
  CommonOpts sol_opts;
  add_common(sol_cmd, sol_opts);
  std::string sol_mode = "torus";
  int sol_samples = 24;
  int sol_iters = 2;
  double sol_t = 0.0;
  std::string sol_tau = "0";
  std::size_t sol_trunc = 20;
  std::string sol_format = "csv";
  std::string sol_out = "-";
  sol_cmd->add_option("--mode", sol_mode)->check(CLI::IsMember({"torus", "symbolic"}));
  sol_cmd->add_option("--samples", sol_samples, "initial angles on the torus core");
  sol_cmd->add_option("--iters", sol_iters, "union-of-images iterations");
  sol_cmd->add_option("--t", sol_t, "base angle (symbolic mode)");
  sol_cmd->add_option("--tau", sol_tau, "address word, cycled as needed");
  sol_cmd->add_option("--N", sol_trunc, "series truncation");
  sol_cmd->add_option("--format", sol_format)->check(CLI::IsMember({"csv", "embedded"}));
  sol_cmd->add_option("--out", sol_out, "output path or - for stdout");

  // curve ---------------------------------------------------------------------------
  auto* curve_cmd = app.add_subcommand("curve", "shadowed curve through one solenoid leaf");
  CommonOpts curve_opts;
  add_common(curve_cmd, curve_opts);
  std::string curve_tau = "0";
  double curve_t0 = 0.0;
  double curve_t1 = kTwoPi;
  std::size_t curve_m = 400;
  std::size_t curve_trunc = 40;
  double curve_eps = 0.0;
  std::string curve_out = "-";
  curve_cmd->add_option("--tau", curve_tau, "address word");
  curve_cmd->add_option("--t0", curve_t0);
  curve_cmd->add_option("--t1", curve_t1);
  curve_cmd->add_option("--M", curve_m, "sample count");
  curve_cmd->add_option("--N", curve_trunc, "orbit truncation");
  curve_cmd->add_option("--eps", curve_eps, "shadowing radius override (0 = estimate)");
  curve_cmd->add_option("--out", curve_out, "CSV path or - for stdout");

  // motion-check -----------------------------------------------------------------
  auto* motion_cmd = app.add_subcommand("motion-check", "shadowing diagnostics at a target c");
  CommonOpts motion_opts;
  add_common(motion_cmd, motion_opts);
  std::size_t motion_points = 20;
  std::size_t motion_trunc = 40;
  double motion_eps = 0.0;
  motion_cmd->add_option("--points", motion_points, "random fiber points to move");
  motion_cmd->add_option("--N", motion_trunc, "series truncation");
  motion_cmd->add_option("--eps", motion_eps, "shadowing radius override (0 = estimate)");

  // verify ---------------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run the full invariant suite");
  CommonOpts verify_opts;
  add_common(verify_cmd, verify_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (render_cmd->parsed()) {
      const CorrespondenceParams params = render_opts.params();
      const AnnulusBounds bounds = annulus_bounds(params);
      if (!bounds.valid)
        throw InvalidAnnulusError("no trapping annulus at this c; nothing to render");
      const double width = render_width > 0.0 ? render_width : 2.2 * bounds.s_c;
      Viewport vp{parse_complex(render_center), width, width, render_size, render_size};
      const RasterGrid grid = membership_grid(params, vp, render_depth, bounds,
                                              render_tol, resolve_threads(render_opts.threads));
      write_pgm(grid, render_out);
      std::cout << "wrote " << render_out << " (" << render_size << "x" << render_size
                << ", depth " << render_depth << ")\n";
      return kExitOk;
    }

    if (sample_cmd->parsed()) {
      const CorrespondenceParams params = sample_opts.params();
      const AnnulusBounds bounds = annulus_bounds(params);
      if (!bounds.valid) throw InvalidAnnulusError("no trapping annulus at this c");
      const auto pts =
          inverse_ifs_sample(params, sample_n, sample_burn, sample_opts.seed, bounds);
      write_output(sample_out, points_csv(pts));
      return kExitOk;
    }

    if (dual_cmd->parsed()) {
      const CorrespondenceParams params = dual_opts.params();
      // Cycles first: the search works even where the sampler has no region.
      const auto grid = default_seed_grid();
      const auto cycles = attracting_cycles_search(params, dual_max_period, grid);
      const std::string jsonl = cycles_to_jsonl(cycles);
      if (dual_cycles_out.empty()) {
        std::cout << jsonl;
      } else {
        write_output(dual_cycles_out, jsonl);
      }
      const auto pts = dual_ifs_sample(params, dual_n, dual_opts.seed);
      write_output(dual_out, points_csv(pts));
      return kExitOk;
    }

    if (bounds_cmd->parsed()) {
      const CorrespondenceParams params = bounds_opts.params();
      const AnnulusBounds b = annulus_bounds(params);
      char buf[160];
      std::snprintf(buf, sizeof buf, "r_c=%.10g R_c=%.10g s_c=%.10g valid=%s\n", b.r_c,
                    b.R_c, b.s_c, b.valid ? "true" : "false");
      std::cout << buf;
      return kExitOk;
    }

    if (cycles_cmd->parsed()) {
      const CorrespondenceParams params = cycles_opts.params();
      if (census_n > 0) {
        const auto pts = unit_circle_periodic_points(params, census_n);
        std::cout << "count=" << pts.size() << '\n' << points_csv(pts);
        return kExitOk;
      }
      if (cycles_symbols.empty())
        throw ParameterError("cycles needs --census or --symbols");
      const auto word = parse_word(cycles_symbols);
      const cplx seed_pt = parse_complex(cycles_seed_point);

      nlohmann::json key;
      key["p"] = params.p();
      key["q"] = params.q();
      key["c"] = {params.c().real(), params.c().imag()};
      key["symbols"] = word;

      if (cycles_continue_to.empty()) {
        if (!cycles_cache.empty()) {
          if (auto hit = cache_lookup(cycles_cache, key)) {
            std::cout << *hit << '\n';
            return kExitOk;
          }
        }
        const Cycle cyc = cycle_from_symbols(params, word, seed_pt);
        nlohmann::json j = cycle_json(params, cyc);
        std::cout << j.dump() << '\n';
        if (!cycles_cache.empty()) cache_append(cycles_cache, j);
        return kExitOk;
      }

      const cplx c_target = parse_complex(cycles_continue_to);
      const CorrespondenceParams params_to(params.p(), params.q(), c_target);
      const Cycle start = cycle_from_symbols(params, word, seed_pt);
      const Cycle moved = continue_cycle(params, params_to, start, cycles_max_step);
      nlohmann::json j = cycle_json(params_to, moved);
      j["source_c"] = {params.c().real(), params.c().imag()};
      j["steps"] = static_cast<int>(
          std::ceil(std::abs(c_target - params.c()) / cycles_max_step));
      std::cout << j.dump() << '\n';
      if (!cycles_cache.empty()) cache_append(cycles_cache, j);
      return kExitOk;
    }

    if (sol_cmd->parsed()) {
      const CorrespondenceParams params(sol_opts.p, sol_opts.q, 0.0);
      const BundleParams bp = choose_bundle_params(params, annulus_bounds(params));
      if (sol_mode == "torus") {
        std::vector<TorusPoint> cloud;
        for (int i = 0; i < sol_samples; ++i)
          cloud.push_back({kTwoPi * i / sol_samples, cplx(0.0, 0.0)});
        const auto result = torus_iterate(bp, params, cloud, sol_iters);
        write_output(sol_out, sol_format == "csv" ? torus_points_csv(result)
                                                  : torus_points_embedded_csv(result));
        return kExitOk;
      }
      const auto tau_word = parse_word(sol_tau);
      std::vector<int> tau;
      for (std::size_t i = 0; i < sol_trunc; ++i) tau.push_back(tau_word[i % tau_word.size()]);
      const C2Point g = symbolic_point(bp, params, sol_t, tau, sol_trunc);
      char buf[200];
      std::snprintf(buf, sizeof buf, "z=%s w=%s r=%.17g delta=%.17g\n",
                    format_complex(g.z).c_str(), format_complex(g.w).c_str(), bp.r,
                    bp.delta);
      write_output(sol_out, buf);
      return kExitOk;
    }

    if (curve_cmd->parsed()) {
      const CorrespondenceParams target = curve_opts.params();
      const CorrespondenceParams base(target.p(), target.q(), 0.0);
      const MotionConfig cfg = config_for(base, curve_eps);
      const auto tau = parse_word(curve_tau);
      const CurveSample curve =
          curve_sample(target, tau, curve_t0, curve_t1, curve_m, cfg, curve_trunc);
      write_output(curve_out, curve_csv(curve));
      return kExitOk;
    }

    if (motion_cmd->parsed()) {
      const CorrespondenceParams target = motion_opts.params();
      const CorrespondenceParams base(target.p(), target.q(), 0.0);
      const MotionConfig cfg = config_for(base, motion_eps);
      const BundleParams bp = choose_bundle_params(base, annulus_bounds(base));
      SplitMix64 rng(motion_opts.seed);
      const std::size_t N = motion_trunc;

      double max_defect = 0.0;
      double max_roundtrip = 0.0;
      bool identity_exact = true;
      double max_lipschitz = 0.0;
      double max_residual = 0.0;
      for (std::size_t i = 0; i < motion_points; ++i) {
        std::vector<int> tau(8);
        for (auto& k : tau) k = static_cast<int>(rng.index(base.q()));
        const double t = kTwoPi * rng.uniform();
        const OrbitSegment orbit = circle_orbit(base, t, tau, N + kMotionBuffer + 1);
        const BundlePoint x = bundle_point_from_orbit(bp, orbit);

        const MotionPoint self = motion_point(base, base, bp, x, cfg, N);
        const BundlePoint xN = bundle_point_from_orbit(bp, truncate_orbit(orbit, N));
        identity_exact &= self.value.z == xN.base && self.value.w == xN.series;

        // Route A moves the shifted point; route B applies the fiber map
        // formula to the moved point. They agree up to series tails.
        const MotionPoint hx = motion_point(base, target, bp, x, cfg, N);
        const BundlePoint fx = bundle_map(base, bp, x);
        const MotionPoint hfx = motion_point(base, target, bp, fx, cfg, N);
        const ShadowedOrbit sh = shadow_orbit(base, target, x.orbit, cfg);
        const cplx phi = branch_image(target, sh.orbit.points[0], sh.orbit.symbols[0]);
        const C2Point rhs{phi, hx.value.w / bp.delta - bp.r * phi / bp.delta};
        max_defect = std::max(max_defect, c2_dist(hfx.value, rhs));

        const ShadowedOrbit back = shadow_orbit(target, base, sh.orbit, cfg);
        for (std::size_t j = 0; j + kMotionBuffer < orbit.points.size(); ++j)
          max_roundtrip = std::max(
              max_roundtrip, std::abs(back.orbit.points[j] - orbit.points[j]));

        const CorrespondenceParams half(target.p(), target.q(), target.c() * 0.5);
        const MotionPoint hu = motion_point(base, half, bp, x, cfg, N);
        const double dc = std::abs(target.c() - half.c());
        if (dc > 0.0)
          max_lipschitz = std::max(max_lipschitz, c2_dist(hx.value, hu.value) / dc);

        if (i < 4) {
          const double h = 1e-3;
          const std::vector<cplx> stencil{cplx(h, 0.0), cplx(0.0, h), cplx(-h, 0.0),
                                          cplx(0.0, -h)};
          max_residual =
              std::max(max_residual, holomorphy_residual(base, bp, x, stencil, cfg, N));
        }
      }
      const CurveSample curve = curve_sample(target, std::vector<int>{0}, 0.0,
                                             0.5 * 3.14159265358979323846, 200, cfg, 30);
      std::vector<std::pair<cplx, cplx>> pairs;
      for (const auto& [t, z] : curve.samples) pairs.emplace_back(std::polar(1.0, t), z);
      const double chord = std::abs(pairs[1].first - pairs[0].first);
      const std::vector<double> scales{4.0 * chord, 8.0 * chord, 16.0 * chord};
      const double K = dilatation_estimate(pairs, scales);

      std::cout << "lambda=" << cfg.lambda << "\neps=" << cfg.eps
                << "\nU_radius=" << cfg.U_radius << "\nC0=" << cfg.C0()
                << "\nbase_identity_exact=" << (identity_exact ? "true" : "false")
                << "\nmax_conjugacy_defect=" << max_defect
                << "\nmax_roundtrip_interior=" << max_roundtrip
                << "\nmax_lipschitz_ratio=" << max_lipschitz
                << "\nmax_cr_residual=" << max_residual << "\ndilatation_K=" << K << '\n';
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const CorrespondenceParams params = verify_opts.params();
      const VerifyReport report = run_invariant_suite(
          params, verify_opts.seed, resolve_threads(verify_opts.threads));
      for (const CheckResult& res : report.checks) {
        std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.name;
        if (!res.detail.empty()) std::cout << " -- " << res.detail;
        std::cout << '\n';
      }
      if (report.all_pass()) return kExitOk;
      return report.numeric_failure ? kExitNumeric : kExitInvariant;
    }
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  std::cerr << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace corrdyn
