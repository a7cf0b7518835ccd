// Command line front end. Exit codes: 0 ok, 1 a certificate or invariant
// failed, 2 bad input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "sbridge/braid.hpp"
#include "sbridge/construction.hpp"
#include "sbridge/errors.hpp"
#include "sbridge/geometry.hpp"
#include "sbridge/realroots.hpp"

using namespace sbridge;
using report::json;
namespace rr = sbridge::realroots;

namespace {

const char* kFormats = R"(File formats:
  plat   one line `n=<int>; word=<comma-separated signed ints>`, e.g.
         `n=2; word=2,2,2`. Generator g > 0 means the string at position g
         passes over the one at g+1; strings are numbered 1..2n, caps and cups
         join (1,2),(3,4),... Blank lines and lines starting with # are
         skipped.
  curve  CSV with header `x,y,z,tag,singular`, one vertex per row; tag in
         {J,L} belongs to the segment leaving the vertex, singular in {0,1}.
         The polygon closes from the last row back to the first.
)";

struct Output {
  std::string path;

  void emit(const json& j) const {
    if (path.empty()) {
      report::write(std::cout, j);
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("IoError", "cannot write " + path);
    report::write(out, j);
  }
};

void write_curve(const std::string& path, const SpaceCurve& c) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("IoError", "cannot write " + path);
  write_curve_csv(out, c);
}

Restrict parse_restrict(const std::string& s) {
  if (s == "all") return Restrict::All;
  if (s == "j") return Restrict::JOnly;
  throw ParseError("--restrict must be all or j, got " + s);
}

Direction parse_direction(const std::string& s) {
  std::vector<double> xs;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      xs.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("bad direction component '" + item + "'");
    }
  }
  if (xs.size() != 3) throw ParseError("direction needs three components");
  return Direction(xs[0], xs[1], xs[2]);
}

rr::Rational parse_rational(const std::string& s) {
  try {
    rr::Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::exception&) {
    throw ParseError("bad rational '" + s + "'");
  }
}

// Comma separated terms `c`, `c*cos<j>` or `c*sin<j>` with rational c.
rr::TrigPoly parse_trig(const std::string& s) {
  rr::TrigPoly p;
  std::stringstream in(s);
  std::string term;
  while (std::getline(in, term, ',')) {
    if (term.empty()) continue;
    const auto star = term.find('*');
    if (star == std::string::npos) {
      p = p + rr::TrigPoly{parse_rational(term), {}, {}};
      continue;
    }
    const rr::Rational c = parse_rational(term.substr(0, star));
    const std::string h = term.substr(star + 1);
    int j = 0;
    try {
      j = std::stoi(h.substr(3));
    } catch (const std::exception&) {
      throw ParseError("bad harmonic in '" + term + "'");
    }
    if (j < 1) throw ParseError("harmonic must be >= 1 in '" + term + "'");
    if (h.rfind("cos", 0) == 0) {
      p = p + rr::cos_harmonic(j, c);
    } else if (h.rfind("sin", 0) == 0) {
      p = p + rr::sin_harmonic(j, c);
    } else {
      throw ParseError("expected cos<j> or sin<j> in '" + term + "'");
    }
  }
  return p;
}

std::string rule_name(braid::RewriteRule r) {
  switch (r) {
    case braid::RewriteRule::FreeCancel: return "free_cancel";
    case braid::RewriteRule::StrandBigon: return "strand_bigon";
    case braid::RewriteRule::CapTransfer: return "cap_transfer";
  }
  return "unknown";
}

json params_json(const construction::ConstructionParams& p) {
  json j;
  j["epsilon"] = p.epsilon.value_or(0.0);
  j["delta"] = p.delta.value_or(0.0);
  j["samples_per_strand"] = p.samples_per_strand;
  j["arc_margin"] = p.arc_margin;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superbridge bound toolkit: plats, lemma scans, sweeps and "
               "certificates."};
  app.footer(kFormats);
  app.require_subcommand(1);
  Output out;
  std::uint64_t seed = 0;
  std::size_t dirs = 1000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out.path, "write the report here, not stdout");
    sub->add_option("--seed", seed, "seed for every random choice")
        ->capture_default_str();
  };
  auto add_dirs = [&](CLI::App* sub) {
    sub->add_option("--dirs", dirs, "lattice directions on the sphere")
        ->capture_default_str();
  };

  // free-strand
  std::string plat_path;
  std::optional<std::size_t> max_steps;
  std::string plat_out;
  auto* free_cmd = app.add_subcommand(
      "free-strand", "route string 1 home and free it from every crossing");
  free_cmd->add_option("--plat", plat_path, "plat file")->required();
  free_cmd->add_option("--max-steps", max_steps, "rewrite budget");
  free_cmd->add_option("--plat-out", plat_out, "write the freed plat here");
  add_common(free_cmd);

  // lemma-scan
  int grid = 0;
  std::size_t random_samples = 0;
  auto* lemma_cmd = app.add_subcommand(
      "lemma-scan",
      "count zeros of a x + (b + x) sqrt(1 - x^2) on (0,1) over (a,b) in "
      "[-10,10]^2; CSV rows a,b,case,zero_count then max_zero_count=<k>");
  lemma_cmd->add_option("--grid", grid, "k x k lattice")->check(
      CLI::Range(2, 100000));
  lemma_cmd->add_option("--random", random_samples, "seeded random samples");
  add_common(lemma_cmd);

  // sweep
  std::string curve_path;
  std::string restrict_name = "all";
  bool no_refine = false;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "maxima of the height function over the "
                                  "sphere of directions");
  sweep_cmd->add_option("--curve", curve_path, "curve CSV")->required();
  sweep_cmd->add_option("--restrict", restrict_name, "all or j")
      ->capture_default_str();
  sweep_cmd->add_flag("--no-refine", no_refine, "skip refining the argmax");
  add_dirs(sweep_cmd);
  add_common(sweep_cmd);

  // degree
  auto* degree_cmd = app.add_subcommand(
      "degree", "most segments met by one plane, over the direction grid");
  degree_cmd->add_option("--curve", curve_path, "curve CSV")->required();
  add_dirs(degree_cmd);
  add_common(degree_cmd);

  // certify
  std::optional<double> epsilon, delta;
  int samples_per_strand = 64;
  std::string curve_out;
  auto* certify_cmd = app.add_subcommand(
      "certify", "build the bridge conformation of a plat whose string 1 is "
                 "free and certify J-only maxima <= 3n - 1");
  certify_cmd->add_option("--plat", plat_path, "plat file")->required();
  certify_cmd->add_option("--epsilon", epsilon, "tube width (default scales "
                                                "with the word)");
  certify_cmd->add_option("--delta", delta, "crossing bump height");
  certify_cmd->add_option("--samples", samples_per_strand,
                          "samples per strand per row")
      ->capture_default_str();
  certify_cmd->add_option("--curve-out", curve_out, "write the curve CSV");
  add_dirs(certify_cmd);
  add_common(certify_cmd);

  // torus
  int p = 2, q = 3, torus_samples = 0;
  double big_r = 2.0, small_r = 1.0;
  auto* torus_cmd = app.add_subcommand(
      "torus", "sweep and degree of the standard (p,q) torus knot curve");
  torus_cmd->add_option("--p", p)->required();
  torus_cmd->add_option("--q", q)->required();
  torus_cmd->add_option("--R", big_r, "core radius")->capture_default_str();
  torus_cmd->add_option("--r", small_r, "tube radius")->capture_default_str();
  torus_cmd->add_option("--samples", torus_samples, "vertices (default 80 q)");
  torus_cmd->add_option("--curve-out", curve_out, "write the curve CSV");
  add_dirs(torus_cmd);
  add_common(torus_cmd);

  // kuiper-roots
  int r = 1;
  std::string lambda1_text, lambda2_text, epsilon_text = "0", v_text = "0,0,1";
  auto* kuiper_cmd = app.add_subcommand(
      "kuiper-roots",
      "critical points of <lambda_eps(t), v> for Kuiper's curve through the "
      "rational substitution; lambdas as terms like 1/2*cos1,1/3*sin2,1/5");
  kuiper_cmd->add_option("--r", r, "number of turns (2n - 1)")
      ->capture_default_str();
  kuiper_cmd->add_option("--lambda1", lambda1_text, "radial perturbation");
  kuiper_cmd->add_option("--lambda2", lambda2_text, "vertical perturbation");
  kuiper_cmd->add_option("--epsilon", epsilon_text, "rational epsilon")
      ->capture_default_str();
  kuiper_cmd->add_option("--v", v_text, "direction x,y,z")
      ->capture_default_str();
  add_common(kuiper_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    json j;
    j["schema"] = 1;
    j["seed"] = seed;

    if (*free_cmd) {
      const auto plat = braid::read_plat_file(plat_path);
      j["command"] = "free-strand";
      j["input"] = braid::format_plat(plat);
      const auto routed = braid::route_leftmost_home(plat);
      j["routed"] = braid::format_plat(routed);
      const auto res = braid::free_leftmost_strand(routed, max_steps);
      j["freed"] = braid::format_plat(res.plat);
      json steps = json::array();
      for (const auto& s : res.steps) {
        steps.push_back({{"rule", rule_name(s.rule)},
                         {"position", s.position},
                         {"length_after", s.length_after}});
      }
      j["steps"] = steps;
      if (!plat_out.empty()) {
        std::ofstream f(plat_out);
        if (!f) throw InputError("IoError", "cannot write " + plat_out);
        f << braid::format_plat(res.plat) << "\n";
      }
      out.emit(j);
      return 0;
    }

    if (*lemma_cmd) {
      if (grid == 0 && random_samples == 0) grid = 200;
      std::ostringstream rows;
      rows << "a,b,case,zero_count\n";
      std::size_t max_count = 0;
      bool strata_ok = true;
      auto visit = [&](const rr::Rational& a, const rr::Rational& b) {
        const std::size_t c = rr::g1_zero_count(a, b);
        const int k = rr::lemma_case(a, b);
        max_count = std::max(max_count, c);
        if (k == 3 && c != 0) strata_ok = false;
        if (k != 3 && k != 4 && c > 1) strata_ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d,%zu\n", a.get_d(),
                      b.get_d(), k, c);
        rows << buf;
      };
      for (int i = 0; i < grid; ++i) {
        for (int k = 0; k < grid; ++k) {
          rr::Rational a(20 * i, grid - 1), b(20 * k, grid - 1);
          a.canonicalize();
          b.canonicalize();
          visit(a - 10, b - 10);
        }
      }
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-10.0, 10.0);
      for (std::size_t i = 0; i < random_samples; ++i) {
        const double a = u(rng);
        const double b = u(rng);
        visit(rr::exact(a), rr::exact(b));
      }
      if (out.path.empty()) {
        std::cout << rows.str();
      } else {
        std::ofstream f(out.path);
        if (!f) throw InputError("IoError", "cannot write " + out.path);
        f << rows.str();
      }
      std::cout << "max_zero_count=" << max_count << "\n";
      return max_count <= 2 && strata_ok ? 0 : 1;
    }

    if (*sweep_cmd) {
      const auto curve = read_curve_file(curve_path);
      const auto rep = sweep_directions(curve, {dirs, seed, !no_refine},
                                        parse_restrict(restrict_name));
      j["command"] = "sweep";
      j["curve"] = curve_path;
      j["restrict"] = restrict_name;
      j["dirs"] = dirs;
      j["stick_count"] = curve.stick_count();
      j["report"] = report::sweep(rep);
      out.emit(j);
      return rep.parity_violations == 0 ? 0 : 1;
    }

    if (*degree_cmd) {
      const auto curve = read_curve_file(curve_path);
      const SphereGrid g{dirs, seed, true};
      const auto cert = certify_inequalities(curve, g);
      j["command"] = "degree";
      j["curve"] = curve_path;
      j["dirs"] = dirs;
      j["degree"] = cert.degree;
      j["max_maxima"] = cert.max_maxima;
      j["stick_count"] = cert.stick_count;
      j["degree_le_twice_maxima"] = cert.degree_le_twice_maxima;
      j["maxima_le_half_sticks"] = cert.maxima_le_half_sticks;
      out.emit(j);
      return cert.degree_le_twice_maxima && cert.maxima_le_half_sticks ? 0 : 1;
    }

    if (*certify_cmd) {
      const auto plat = braid::read_plat_file(plat_path);
      construction::ConstructionParams cp;
      cp.epsilon = epsilon;
      cp.delta = delta;
      cp.samples_per_strand = samples_per_strand;
      const auto conf = construction::build_conformation(plat, cp);
      write_curve(curve_out, conf.curve);
      j["command"] = "certify";
      j["plat"] = braid::format_plat(plat);
      j["dirs"] = dirs;
      j["n"] = plat.n;
      j["stick_count"] = conf.curve.stick_count();
      try {
        const auto cert = construction::certify_bound(conf, dirs, seed);
        j["bound"] = cert.bound;
        j["max_maxima"] = cert.sweep.max_maxima;
        j["argmax_direction"] = report::direction(cert.sweep.argmax_direction);
        j["min_maxima"] = cert.sweep.min_maxima;
        json tallies;
        for (const auto& [c, t] : cert.cases) {
          tallies[construction::to_string(c)] = {
              {"directions", t.directions},
              {"max_maxima", t.max_maxima},
              {"bound", t.bound}};
        }
        j["case_tallies"] = tallies;
        j["params"] = params_json(cert.params);
        j["rebuilds"] = cert.rebuilds;
        j["holds"] = true;
        out.emit(j);
        return 0;
      } catch (const BoundViolation& e) {
        j["bound"] = 3 * plat.n - 1;
        j["params"] = params_json(conf.params);
        j["holds"] = false;
        j["error"] = e.what();
        out.emit(j);
        return 1;
      }
    }

    if (*torus_cmd) {
      const int samples = torus_samples > 0 ? torus_samples : 80 * q;
      const auto curve =
          construction::torus_knot_curve(p, q, big_r, small_r, samples);
      write_curve(curve_out, curve);
      const auto cert = certify_inequalities(curve, {dirs, seed, true});
      j["command"] = "torus";
      j["p"] = p;
      j["q"] = q;
      j["R"] = big_r;
      j["r"] = small_r;
      j["dirs"] = dirs;
      j["stick_count"] = cert.stick_count;
      j["max_maxima"] = cert.max_maxima;
      j["degree"] = cert.degree;
      j["degree_le_twice_maxima"] = cert.degree_le_twice_maxima;
      j["sweep"] = report::sweep(cert.sweep);
      out.emit(j);
      return cert.degree_le_twice_maxima ? 0 : 1;
    }

    if (*kuiper_cmd) {
      if (r < 1) throw InvalidParams("--r must be positive");
      const auto l1 = parse_trig(lambda1_text);
      const auto l2 = parse_trig(lambda2_text);
      const auto eps = parse_rational(epsilon_text);
      const auto v = parse_direction(v_text);
      const auto wp = rr::weierstrass_polynomial(l1, l2, r, eps, v);
      j["command"] = "kuiper-roots";
      j["r"] = r;
      j["epsilon"] = eps.get_str();
      j["v"] = report::direction(v);
      j["N"] = wp.N;
      j["degree"] = wp.poly.degree();
      json coeffs = json::array();
      for (const auto& c : wp.poly.coefficients()) coeffs.push_back(c.get_str());
      j["coefficients"] = coeffs;
      j["real_roots"] = wp.poly.is_zero() ? 0 : rr::count_real_roots(wp.poly);
      j["critical_points"] = rr::kuiper_critical_count(wp);
      // t = 3 pi / 2 sits at w = infinity in this chart
      j["critical_at_infinity"] = wp.poly.degree() < 2 * wp.N;
      out.emit(j);
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
