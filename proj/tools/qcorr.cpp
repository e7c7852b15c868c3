// qcorr: two-qubit correlation analysis from the command line.
//
// Subcommands: analyze, scan, thresholds, simulate, discrepancy.
// Output is a human-readable table by default; --format json (and csv for
// scan) selects machine formats. Exit codes: 0 success, 2 usage or domain
// error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/qcorr.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& message) {
  throw CliFailure{exit_code, message};
}

void check(qcorr_status status) {
  if (status == QCORR_OK) return;
  const int code = status == QCORR_ERR_IO ? kExitIo : kExitUsage;
  std::ostringstream msg;
  msg << qcorr_status_name(status) << ": " << qcorr_last_error();
  fail(code, msg.str());
}

std::string take_string(char* text) {
  std::string out = text ? text : "";
  qcorr_string_free(text);
  return out;
}

// --gamma and --theta are mutually exclusive; exactly one is required.
double resolve_gamma(const CLI::Option* gamma_opt, double gamma, const CLI::Option* theta_opt,
                     double theta) {
  const bool has_gamma = gamma_opt->count() > 0;
  const bool has_theta = theta_opt->count() > 0;
  if (has_gamma == has_theta) fail(kExitUsage, "give exactly one of --gamma or --theta");
  if (has_gamma) return gamma;
  double out = 0.0;
  check(qcorr_theta_to_gamma(theta, &out));
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) fail(kExitIo, "cannot open " + out_path + " for writing");
  file << text;
  if (!file) fail(kExitIo, "write failed for " + out_path);
}

std::string format_number(double value, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

std::string field_or_dash(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return "-";
  return format_number(doc[key].get<double>());
}

qcorr_filter parse_filter(const std::string& name) {
  if (name == "none") return QCORR_FILTER_NONE;
  if (name == "f") return QCORR_FILTER_F;
  if (name == "g") return QCORR_FILTER_G;
  fail(kExitUsage, "unknown filter '" + name + "' (expected none, f or g)");
}

// lo:hi:n, e.g. 1:100:50
std::vector<double> parse_gamma_log(const std::string& text) {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  char tail = '\0';
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &tail) != 3)
    fail(kExitUsage, "--gamma-log expects lo:hi:n, got '" + text + "'");
  if (n < 2) fail(kExitUsage, "--gamma-log needs at least 2 points");
  std::vector<double> values(static_cast<size_t>(n), 0.0);
  check(qcorr_log_spaced(lo, hi, n, values.data()));
  return values;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  double p = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  std::string filter = "none";
  std::vector<double> filter_diag;
  std::string format = "table";
  std::string out_path;
};

int run_analyze(const AnalyzeArgs& args) {
  const double gamma = resolve_gamma(args.gamma_opt, args.gamma, args.theta_opt, args.theta);
  const bool custom = args.filter == "custom";
  if (custom && args.filter_diag.size() != 4)
    fail(kExitUsage, "--filter custom needs --filter-diag a0 a1 b0 b1");
  if (!custom && !args.filter_diag.empty())
    fail(kExitUsage, "--filter-diag only applies to --filter custom");
  const qcorr_filter filter = custom ? QCORR_FILTER_NONE : parse_filter(args.filter);

  char* text = nullptr;
  check(qcorr_classify_json(args.p, gamma, 1, 1, &text));
  json row = json::parse(take_string(text));

  double success = 1.0;
  if (custom) {
    qcorr_state* state = nullptr;
    check(qcorr_state_create_gamma(args.p, gamma, &state));
    qcorr_state* filtered = nullptr;
    const auto& d = args.filter_diag;
    qcorr_status status = qcorr_apply_custom_filter(state, d[0], d[1], d[2], d[3], &filtered,
                                                    &success);
    qcorr_state_free(state);
    check(status);
    double c = 0.0, s = 0.0, t = 0.0;
    status = qcorr_concurrence(filtered, &c);
    if (status == QCORR_OK) status = qcorr_bell_s(filtered, &s);
    if (status == QCORR_OK) status = qcorr_steering_t(filtered, &t);
    qcorr_state_free(filtered);
    check(status);
    row["filter"] = "custom";
    row["filter_success_prob"] = success;
    row["filtered"] = json{{"C", c}, {"S", s}, {"T", t}};
  } else if (filter != QCORR_FILTER_NONE) {
    qcorr_state* state = nullptr;
    check(qcorr_state_create_gamma(args.p, gamma, &state));
    qcorr_state* filtered = nullptr;
    const qcorr_status status = qcorr_apply_filter(state, filter, &filtered, &success);
    qcorr_state_free(state);
    check(status);
    qcorr_state_free(filtered);
    row["filter"] = args.filter;
    row["filter_success_prob"] = success;
  }

  if (args.format == "json") {
    write_output(row.dump(2), args.out_path);
    return kExitOk;
  }
  if (args.format != "table")
    fail(kExitUsage, "analyze supports --format json (default: table)");

  std::ostringstream out;
  out << "point (p = " << format_number(args.p) << ", gamma = " << format_number(gamma)
      << ", theta = " << format_number(row["theta"].get<double>()) << ")\n";
  out << "  concurrence  " << field_or_dash(row, "C") << '\n';
  out << "  bell_S       " << field_or_dash(row, "S") << '\n';
  out << "  steering_T   " << field_or_dash(row, "T") << '\n';
  out << "  unsteer_TU   " << field_or_dash(row, "TU") << '\n';
  if (filter == QCORR_FILTER_F || filter == QCORR_FILTER_G) {
    const bool f = filter == QCORR_FILTER_F;
    out << "  filter " << args.filter << " (success_prob " << format_number(success) << ")\n";
    out << "    concurrence  " << field_or_dash(row, f ? "C_F" : "C_G") << '\n';
    out << "    bell_S       " << field_or_dash(row, f ? "S_F" : "S_G") << '\n';
    out << "    steering_T   " << field_or_dash(row, f ? "T_F" : "T_G") << '\n';
  } else if (custom) {
    out << "  filter custom (success_prob " << format_number(success) << ")\n";
    out << "    concurrence  " << field_or_dash(row["filtered"], "C") << '\n';
    out << "    bell_S       " << field_or_dash(row["filtered"], "S") << '\n';
    out << "    steering_T   " << field_or_dash(row["filtered"], "T") << '\n';
  }
  out << "  labels      ";
  for (const auto& label : row["labels"]) out << ' ' << label.get<std::string>();
  out << '\n';
  write_output(out.str(), args.out_path);
  return kExitOk;
}

// ------------------------------------------------------------------- scan

struct ScanArgs {
  std::vector<double> gammas;
  std::string gamma_log;
  int p_steps = 101;
  bool no_f = false;
  bool no_g = false;
  std::string format = "table";
  std::string out_path;
};

int run_scan(const ScanArgs& args) {
  std::vector<double> gammas = args.gammas;
  if (!args.gamma_log.empty()) {
    if (!gammas.empty()) fail(kExitUsage, "give either --gamma values or --gamma-log, not both");
    gammas = parse_gamma_log(args.gamma_log);
  }
  if (gammas.empty()) gammas = parse_gamma_log("1:100:25");

  const int with_f = args.no_f ? 0 : 1;
  const int with_g = args.no_g ? 0 : 1;

  char* text = nullptr;
  if (args.format == "csv") {
    check(qcorr_scan_csv(gammas.data(), static_cast<int>(gammas.size()), args.p_steps, with_f,
                         with_g, &text));
    write_output(take_string(text), args.out_path);
    return kExitOk;
  }

  check(qcorr_scan_json(gammas.data(), static_cast<int>(gammas.size()), args.p_steps, with_f,
                        with_g, &text));
  const std::string body = take_string(text);
  if (args.format == "json") {
    write_output(body, args.out_path);
    return kExitOk;
  }
  if (args.format != "table") fail(kExitUsage, "scan supports --format csv or json");

  json rows = json::parse(body);
  std::ostringstream out;
  out << "gamma      theta      p          C          S          T          TU         labels\n";
  for (const auto& row : rows) {
    std::ostringstream labels;
    for (const auto& label : row["labels"]) labels << label.get<std::string>() << ';';
    std::string label_text = labels.str();
    if (!label_text.empty()) label_text.pop_back();
    char line[256];
    std::snprintf(line, sizeof(line), "%-10.5g %-10.5g %-10.5g %-10.5g %-10.5g %-10.5g %-10.5g %s\n",
                  row["gamma"].get<double>(), row["theta"].get<double>(), row["p"].get<double>(),
                  row["C"].get<double>(), row["S"].get<double>(), row["T"].get<double>(),
                  row["TU"].get<double>(), label_text.c_str());
    out << line;
  }
  write_output(out.str(), args.out_path);
  return kExitOk;
}

// ------------------------------------------------------------- thresholds

struct ThresholdArgs {
  double gamma = 0.0;
  double theta = 0.0;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  std::string method = "closed";
  std::string format = "table";
  std::string out_path;
};

int run_thresholds(const ThresholdArgs& args) {
  const double gamma = resolve_gamma(args.gamma_opt, args.gamma, args.theta_opt, args.theta);
  if (args.method != "closed" && args.method != "bisect")
    fail(kExitUsage, "--method must be closed or bisect");
  const int use_bisection = args.method == "bisect" ? 1 : 0;

  struct Row {
    const char* name;
    qcorr_criterion criterion;
  };
  const Row rows[] = {
      {"entangled", QCORR_CRIT_ENTANGLED},
      {"steer", QCORR_CRIT_STEERABLE},
      {"bell", QCORR_CRIT_BELL},
      {"unsteer_root", QCORR_CRIT_UNSTEER_CERTIFIED},
      {"hidden_steer_g", QCORR_CRIT_HIDDEN_STEER_G},
      {"hidden_bell_g", QCORR_CRIT_HIDDEN_BELL_G},
  };

  double theta = 0.0;
  check(qcorr_gamma_to_theta(gamma, &theta));

  json doc{{"gamma", gamma}, {"theta", theta}, {"method", args.method}};
  json table = json::object();
  std::ostringstream out;
  out << "thresholds in p at gamma = " << format_number(gamma) << " (method " << args.method
      << ")\n";
  for (const Row& row : rows) {
    double p_star = 0.0;
    int exists = 0;
    check(qcorr_threshold(row.criterion, gamma, use_bisection, &p_star, &exists));
    if (exists) {
      table[row.name] = p_star;
      char line[96];
      std::snprintf(line, sizeof(line), "  %-15s %.5f\n", row.name, p_star);
      out << line;
    } else {
      table[row.name] = nullptr;
      char line[96];
      std::snprintf(line, sizeof(line), "  %-15s never\n", row.name);
      out << line;
    }
  }
  doc["thresholds"] = table;

  if (args.format == "json") {
    write_output(doc.dump(2), args.out_path);
    return kExitOk;
  }
  if (args.format != "table")
    fail(kExitUsage, "thresholds supports --format json (default: table)");
  write_output(out.str(), args.out_path);
  return kExitOk;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  double p = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  std::string filter = "none";
  int n = 2000;
  int sets = 10;
  double accidentals = 10.0;
  double fidelity = 1.0;
  std::uint64_t seed = 0;
  bool subtract = false;
  std::string format = "table";
  std::string out_path;
};

int run_simulate(const SimulateArgs& args) {
  const double gamma = resolve_gamma(args.gamma_opt, args.gamma, args.theta_opt, args.theta);
  double theta = 0.0;
  check(qcorr_gamma_to_theta(gamma, &theta));
  const qcorr_filter filter = parse_filter(args.filter);

  qcorr_sim_options options;
  qcorr_sim_options_init(&options);
  options.n_per_setting = args.n;
  options.sets = args.sets;
  options.accidentals = args.accidentals;
  options.fidelity = args.fidelity;
  options.seed = args.seed;
  options.subtract_accidentals = args.subtract ? 1 : 0;

  char* text = nullptr;
  check(qcorr_simulate_json(args.p, theta, filter, &options, &text));
  const std::string body = take_string(text);

  if (!args.out_path.empty()) write_output(body, args.out_path);
  if (args.format == "json") {
    if (args.out_path.empty()) write_output(body, "");
    return kExitOk;
  }
  if (args.format != "table")
    fail(kExitUsage, "simulate supports --format json (default: table)");

  json doc = json::parse(body);
  std::ostringstream out;
  out << "simulated run at p = " << format_number(args.p) << ", gamma = " << format_number(gamma)
      << ", filter " << doc["filter"].get<std::string>() << '\n';
  out << "  sets " << doc["sets"].get<int>() << ", n_per_setting "
      << doc["n_per_setting"].get<int>() << ", accidentals "
      << format_number(doc["accidentals"].get<double>()) << ", fidelity "
      << format_number(doc["fidelity"].get<double>()) << ", seed " << doc["seed"].get<std::uint64_t>()
      << '\n';
  out << "  success_prob " << format_number(doc["success_prob"].get<double>()) << '\n';
  const auto stat = [&](const char* name, const char* mean_key, const char* std_key) {
    out << "  " << name << "  " << format_number(doc[mean_key].get<double>()) << " +/- "
        << format_number(doc[std_key].get<double>()) << '\n';
  };
  stat("S ", "S_mean", "S_std");
  stat("T ", "T_mean", "T_std");
  stat("TU", "TU_mean", "TU_std");
  if (!args.out_path.empty()) out << "  report written to " << args.out_path << '\n';
  std::cout << out.str();
  return kExitOk;
}

// ------------------------------------------------------------ discrepancy

int run_discrepancy(const std::string& format, const std::string& out_path) {
  char* text = nullptr;
  check(qcorr_discrepancy_json(&text));
  const std::string body = take_string(text);
  if (format == "json") {
    write_output(body, out_path);
    return kExitOk;
  }
  if (format != "table")
    fail(kExitUsage, "discrepancy supports --format json (default: table)");

  json doc = json::parse(body);
  std::ostringstream out;
  out << "closed-form vs operational steering for the g-filtered family\n";
  out << "  note: " << doc["note"].get<std::string>() << '\n';
  out << "  at p = " << format_number(doc["evaluation_point"]["p"].get<double>())
      << ", theta = " << format_number(doc["evaluation_point"]["theta"].get<double>()) << ":\n";
  out << "    closed conditional      " << format_number(doc["closed_conditional_x"].get<double>())
      << '\n';
  out << "    operational conditional "
      << format_number(doc["operational_conditional_x"].get<double>()) << '\n';
  out << "    closed T                " << format_number(doc["closed_T"].get<double>()) << '\n';
  out << "    operational T           " << format_number(doc["operational_T"].get<double>())
      << '\n';
  out << "    constant offset         " << format_number(doc["constant_offset"].get<double>())
      << '\n';
  out << "  grid agreement (closed vs matrix, 20x20):\n";
  out << "    concurrence_g max |diff| "
      << format_number(doc["concurrence_g_max_abs_diff"].get<double>()) << '\n';
  out << "    bell_g max |diff|        " << format_number(doc["bell_g_max_abs_diff"].get<double>())
      << '\n';
  write_output(out.str(), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit correlation analysis: entanglement, Bell nonlocality, steering "
               "and local-filtering phase structure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qcorr_version()));

  AnalyzeArgs analyze;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "measures and region labels for one (p, gamma) point");
  analyze_cmd->add_option("--p", analyze.p, "mixing weight in [0, 1]")->required();
  analyze.gamma_opt = analyze_cmd->add_option("--gamma", analyze.gamma, "gamma = cot(theta)^2");
  analyze.theta_opt = analyze_cmd->add_option("--theta", analyze.theta, "theta in radians");
  analyze_cmd->add_option("--filter", analyze.filter,
                          "none, f, g or custom (adds a filtered block)");
  analyze_cmd->add_option("--filter-diag", analyze.filter_diag,
                          "custom filter diagonals a0 a1 b0 b1")
      ->expected(4);
  analyze_cmd->add_option("--format", analyze.format, "table (default) or json");
  analyze_cmd->add_option("--out", analyze.out_path, "write output to file");

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "sweep the (p, gamma) plane");
  scan_cmd->add_option("--gamma", scan.gammas, "gamma values (repeatable)");
  scan_cmd->add_option("--gamma-log", scan.gamma_log, "log-spaced gamma values as lo:hi:n");
  scan_cmd->add_option("--p-steps", scan.p_steps, "points along p in [0, 1] (default 101)");
  scan_cmd->add_flag("--no-f", scan.no_f, "skip the f-filtered columns");
  scan_cmd->add_flag("--no-g", scan.no_g, "skip the g-filtered columns");
  scan_cmd->add_option("--format", scan.format, "table (default), csv or json");
  scan_cmd->add_option("--out", scan.out_path, "write output to file");

  ThresholdArgs thresholds;
  CLI::App* thresholds_cmd =
      app.add_subcommand("thresholds", "named p thresholds at fixed gamma");
  thresholds.gamma_opt =
      thresholds_cmd->add_option("--gamma", thresholds.gamma, "gamma = cot(theta)^2");
  thresholds.theta_opt = thresholds_cmd->add_option("--theta", thresholds.theta, "theta in radians");
  thresholds_cmd->add_option("--method", thresholds.method, "closed (default) or bisect");
  thresholds_cmd->add_option("--format", thresholds.format, "table (default) or json");
  thresholds_cmd->add_option("--out", thresholds.out_path, "write output to file");

  SimulateArgs simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "photon-counting experiment simulation");
  simulate_cmd->add_option("--p", simulate.p, "mixing weight in [0, 1]")->required();
  simulate.gamma_opt = simulate_cmd->add_option("--gamma", simulate.gamma, "gamma = cot(theta)^2");
  simulate.theta_opt = simulate_cmd->add_option("--theta", simulate.theta, "theta in radians");
  simulate_cmd->add_option("--filter", simulate.filter, "none (default), f or g");
  simulate_cmd->add_option("--n", simulate.n, "coincidences per setting (default 2000)");
  simulate_cmd->add_option("--sets", simulate.sets, "independent repetitions (default 10)");
  simulate_cmd->add_option("--accidentals", simulate.accidentals,
                           "expected accidental coincidences per setting (default 10)");
  simulate_cmd->add_option("--fidelity", simulate.fidelity,
                           "source fidelity to the ideal state (default 1.0)");
  simulate_cmd->add_option("--seed", simulate.seed, "rng seed (default 0)");
  simulate_cmd->add_flag("--subtract-accidentals", simulate.subtract,
                         "subtract the expected accidental background");
  simulate_cmd->add_option("--format", simulate.format, "table (default) or json");
  simulate_cmd->add_option("--out", simulate.out_path, "write the JSON report to file");

  std::string discrepancy_format = "table";
  std::string discrepancy_out;
  CLI::App* discrepancy_cmd = app.add_subcommand(
      "discrepancy", "known closed-form vs operational steering mismatch report");
  discrepancy_cmd->add_option("--format", discrepancy_format, "table (default) or json");
  discrepancy_cmd->add_option("--out", discrepancy_out, "write output to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (scan_cmd->parsed()) return run_scan(scan);
    if (thresholds_cmd->parsed()) return run_thresholds(thresholds);
    if (simulate_cmd->parsed()) return run_simulate(simulate);
    if (discrepancy_cmd->parsed()) return run_discrepancy(discrepancy_format, discrepancy_out);
  } catch (const CliFailure& failure) {
    std::cerr << "error: " << failure.message << '\n';
    return failure.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
