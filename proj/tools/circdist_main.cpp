// Command-line surface for the circle-diffeomorphism distortion toolkit:
// distortion reports, Theorem-3 style certificates, C1 classification,
// rotation-number sweeps and fragmentation paths, with CSV/JSON/SVG outputs.
//
// Exit codes: 0 success, 1 configuration error, 2 budget exhausted,
// 3 certification failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "circdist/coarse_geometry.hpp"
#include "circdist/constructions.hpp"
#include "circdist/distortion.hpp"
#include "circdist/errors.hpp"
#include "circdist/metrics.hpp"
#include "circdist/report_io.hpp"

namespace {

using nlohmann::json;
using namespace circdist;

struct MapOptions {
  std::string example;
  std::string map_json;
  double theta = 0.25;
  double K = 2.0;
  std::optional<long> m;
};

void add_map_flags(CLI::App* cmd, MapOptions& opt) {
  cmd->add_option("--example", opt.example,
                  "named example: rotation | mobius | prop2 | theorem3");
  cmd->add_option("--map-json", opt.map_json, "inline map descriptor JSON");
  cmd->add_option("--theta", opt.theta, "rotation angle (example rotation)")
      ->capture_default_str();
  cmd->add_option("--K", opt.K, "theorem3 parameter K in (0,2]")
      ->capture_default_str();
  auto* mflag = cmd->add_option("--m", "theorem3 parameter m (omit to search)");
  mflag->each([&opt](const std::string& s) { opt.m = std::stol(s); });
}

DiffeoMap resolve_map(const MapOptions& opt, json& echo) {
  if (!opt.map_json.empty()) {
    echo["map_source"] = "inline";
    return DiffeoMap::parse(opt.map_json);
  }
  if (opt.example == "rotation") {
    echo["map_source"] = "rotation";
    echo["theta"] = opt.theta;
    return rotation(opt.theta);
  }
  if (opt.example == "mobius") {
    echo["map_source"] = "mobius";
    return mobius_circle(1.0, 0.0, 0.0, 2.0);  // the hyperbolic standard example
  }
  if (opt.example == "prop2") {
    echo["map_source"] = "prop2";
    return prop2_pair().f;
  }
  if (opt.example == "theorem3") {
    echo["map_source"] = "theorem3";
    echo["K"] = opt.K;
    const Theorem3Build build = theorem3_build(opt.K, opt.m);
    echo["m"] = build.cert.m;
    return build.map;
  }
  throw ParseError("--example must be one of rotation|mobius|prop2|theorem3 "
                   "(or pass --map-json)");
}

std::string default_string(const std::string& s, const std::string& fallback) {
  return s.empty() ? fallback : s;
}

void write_json(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
}

int cmd_distort(const MapOptions& mopt, const std::string& metric_name,
                long n_max, const std::string& out, const std::string& format) {
  json echo{{"command", "distort"}, {"metric", metric_name}, {"n_max", n_max},
            {"format", format}};
  const DiffeoMap f = resolve_map(mopt, echo);
  echo["map_hash"] = f.descriptor_hash();
  const MetricId metric = metric_from_string(metric_name);
  const DistortionReport rep = asymptotic_distortion(f, metric, n_max);
  const std::string base = default_string(out, "distort");
  if (format == "csv") {
    std::ostringstream head;
    head << "# config=" << echo.dump() << "\n";
    write_text_file(base + ".csv", head.str() + report_to_csv(rep));
    std::cout << "wrote " << base << ".csv\n";
  } else {
    json j = report_to_json(rep);
    j["config"] = echo;
    write_json(base + ".json", j);
  }
  std::cout << "limit_estimate " << rep.limit_estimate << " verdict "
            << to_string(rep.verdict) << "\n";
  return 0;
}

int cmd_certify(double K, std::optional<long> m, const std::string& out) {
  json echo{{"command", "certify"}, {"K", K}};
  Theorem3Build build = theorem3_build(K, m);
  theorem3_lower_bound(build.map, build.cert);
  echo["m"] = build.cert.m;
  echo["map_hash"] = build.map.descriptor_hash();

  const std::string base = default_string(out, "certify");
  json cert = certificate_to_json(build.cert);
  cert["config"] = echo;
  write_json(base + ".json", cert);

  // Figure data: x, f''(x) at 2^10 samples, CSV + SVG.
  std::ostringstream csv;
  csv.precision(17);
  csv << "# config=" << echo.dump() << "\n";
  csv << "x,fpp\n";
  std::vector<double> xs, ys;
  for (int i = 0; i <= 1024; ++i) {
    const double x = static_cast<double>(i) / 1024.0;
    const double y = build.map.second_derivative(x);
    xs.push_back(x);
    ys.push_back(y);
    csv << x << "," << y << "\n";
  }
  write_text_file(base + ".csv", csv.str());
  std::cout << "wrote " << base << ".csv\n";
  write_text_file(base + ".svg",
                  svg_line_chart(xs, ys, "second derivative of the undistorted map",
                                 "x", "f''(x)"));
  std::cout << "wrote " << base << ".svg\n";

  if (!build.cert.all_ok()) {
    std::cerr << "certificate conditions failed at m = " << build.cert.m << "\n";
    return 3;
  }
  std::cout << "certificate ok: m=" << build.cert.m
            << " lower_bound=" << build.cert.lower_bound << "\n";
  return 0;
}

int cmd_classify(const MapOptions& mopt, long q_max, const std::string& out) {
  json echo{{"command", "classify"}, {"q_max", q_max}};
  const DiffeoMap f = resolve_map(mopt, echo);
  echo["map_hash"] = f.descriptor_hash();
  const Classification cls = classify_c1(f, q_max);
  json j{{"schema", "circdist.classification.v1"},
         {"verdict", to_string(cls.verdict)},
         {"rotation_estimate", cls.rot.estimate},
         {"config", echo}};
  if (cls.rot.rational)
    j["rotation_rational"] = {{"p", cls.rot.rational->p}, {"q", cls.rot.rational->q}};
  if (cls.witness) {
    j["witness"] = {{"x", cls.witness->x},
                    {"period", cls.witness->period},
                    {"multiplier", cls.witness->multiplier},
                    {"hyperbolic", cls.witness->hyperbolic}};
  }
  write_json(default_string(out, "classify") + ".json", j);
  std::cout << "verdict " << to_string(cls.verdict) << "\n";
  return 0;
}

int cmd_sweep(const MapOptions& mopt, double theta_max, long grid,
              const std::string& out) {
  json echo{{"command", "sweep"}, {"theta_max", theta_max}, {"grid", grid}};
  const DiffeoMap f = resolve_map(mopt, echo);
  echo["map_hash"] = f.descriptor_hash();
  std::vector<double> thetas;
  for (long i = 0; i < grid; ++i)
    thetas.push_back(theta_max * static_cast<double>(i) /
                     static_cast<double>(grid - 1));
  const SweepTable table = rotation_sweep(f, thetas);
  std::ostringstream csv;
  csv.precision(17);
  csv << "# config=" << echo.dump() << "\n";
  csv << "theta,rotation_number,rational\n";
  for (const SweepEntry& e : table.entries) {
    csv << e.theta << "," << e.estimate << ",";
    if (e.rational) csv << e.rational->p << "/" << e.rational->q;
    csv << "\n";
  }
  for (const Plateau& p : table.plateaus) {
    csv << "# plateau " << p.value.p << "/" << p.value.q << " on [" << p.theta_lo
        << "," << p.theta_hi << "] confirmed=" << (p.confirmed ? 1 : 0) << "\n";
  }
  const std::string base = default_string(out, "sweep");
  write_text_file(base + ".csv", csv.str());
  std::cout << "wrote " << base << ".csv\n";
  return 0;
}

int cmd_fragment(const MapOptions& mopt, const std::string& metric_name,
                 double epsilon, const std::string& out) {
  json echo{{"command", "fragment"}, {"metric", metric_name},
            {"epsilon", epsilon}};
  const DiffeoMap f = resolve_map(mopt, echo);
  echo["map_hash"] = f.descriptor_hash();
  const MetricId metric = metric_from_string(metric_name);
  FragmentationPath path;
  if (metric == MetricId::C1AC)
    path = fragmentation_path_c1ac(f, epsilon);
  else if (metric == MetricId::C1Circle || metric == MetricId::C1Interval)
    path = fragmentation_path_c1(f, epsilon);
  else
    throw ParseError("fragment supports metrics c1ac, c1-circle, c1-interval");
  json j = path_to_json(path);
  j["config"] = echo;
  write_json(default_string(out, "fragment") + ".json", j);
  std::cout << "N " << path.N << " residual " << path.residual << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circdist: distortion of circle and interval diffeomorphisms"};
  app.require_subcommand(1);

  MapOptions mopt;
  std::string metric = "c1-circle";
  std::string out;
  std::string format = "csv";
  long n_max = defaults::kNMaxDefault;
  long grid = 26;
  long q_max = defaults::kRationalQMax;
  double epsilon = 0.1;
  double theta_max = 0.05;
  double tol = defaults::kRotationTol;

  CLI::App* distort = app.add_subcommand("distort", "asymptotic distortion report");
  add_map_flags(distort, mopt);
  distort->add_option("--metric", metric, "metric id")->capture_default_str();
  distort->add_option("--n-max", n_max, "largest iterate")->capture_default_str();
  distort->add_option("--out", out, "output path prefix");
  distort->add_option("--format", format, "csv | json")->capture_default_str();

  CLI::App* certify = app.add_subcommand("certify", "build + certify the undistorted example");
  certify->add_option("--K", mopt.K, "K in (0,2]")->capture_default_str();
  auto* mflag = certify->add_option("--m", "fixed m (omit to search)");
  mflag->each([&](const std::string& s) { mopt.m = std::stol(s); });
  certify->add_option("--out", out, "output path prefix");

  CLI::App* classify = app.add_subcommand("classify", "C1 distortion classification");
  add_map_flags(classify, mopt);
  classify->add_option("--q-max", q_max, "largest period searched")->capture_default_str();
  classify->add_option("--out", out, "output path prefix");

  CLI::App* sweep = app.add_subcommand("sweep", "rotation-number sweep of R_theta o f");
  add_map_flags(sweep, mopt);
  sweep->add_option("--theta", theta_max, "sweep upper end")->capture_default_str();
  sweep->add_option("--grid", grid, "number of sweep points")->capture_default_str();
  sweep->add_option("--out", out, "output path prefix");

  CLI::App* fragment = app.add_subcommand("fragment", "fragmentation path witness");
  add_map_flags(fragment, mopt);
  fragment->add_option("--metric", metric, "c1ac | c1-circle | c1-interval")
      ->capture_default_str();
  fragment->add_option("--epsilon", epsilon, "step radius")->capture_default_str();
  fragment->add_option("--out", out, "output path prefix");

  app.add_option("--tol", tol, "rotation-number tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message naming the offending flag
    return 1;
  }

  try {
    if (distort->parsed()) return cmd_distort(mopt, metric, n_max, out, format);
    if (certify->parsed()) return cmd_certify(mopt.K, mopt.m, out);
    if (classify->parsed()) return cmd_classify(mopt, q_max, out);
    if (sweep->parsed()) return cmd_sweep(mopt, theta_max, grid, out);
    if (fragment->parsed()) return cmd_fragment(mopt, metric, epsilon, out);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergentTail& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const ConditionFailure& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
