#include "framelab/cli.hpp"

#include <cctype>
#include <ostream>

#include "CLI11.hpp"
#include "framelab/abelian.hpp"
#include "framelab/frame.hpp"
#include "framelab/io.hpp"
#include "framelab/representation.hpp"

namespace framelab::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::EmptyFactors:
    case ErrorCode::OrderTooLarge:
    case ErrorCode::NotAssociative:
    case ErrorCode::NoIdentity:
    case ErrorCode::NoInverse:
    case ErrorCode::MalformedTable:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Io:
      return kParseError;
    case ErrorCode::DimMismatch:
    case ErrorCode::DimTooLarge:
    case ErrorCode::BadLength:
    case ErrorCode::BadFactorization:
      return kDimensionMismatch;
    case ErrorCode::ZeroGenerator:
      return kZeroGenerator;
    default:
      return kFailure;
  }
}

namespace {

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out_path.empty()) {
    out << text;
  } else {
    write_text_file(config.out_path, text);
  }
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void require_inputs(const RunConfig& config) {
  if (config.rep.empty()) throw Error(ErrorCode::ParseError, "--rep is required");
  if (config.psi_path.empty()) throw Error(ErrorCode::ParseError, "--psi is required");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::ParseError, "--tol must be positive");
}

std::pair<int, int> spec_pair(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto comma = spec.find(',');
  return {std::stoi(std::string(spec.substr(colon + 1, comma - colon - 1))),
          std::stoi(std::string(spec.substr(comma + 1)))};
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "frame-lab: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "frame-lab: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace

std::vector<std::string> split_targets(const std::string& list) {
  std::vector<std::string> targets;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    std::string piece = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const bool numeric =
        !piece.empty() && std::all_of(piece.begin(), piece.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric && !targets.empty()) {
      targets.back() += "," + piece;
    } else if (!piece.empty()) {
      targets.push_back(std::move(piece));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return targets;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(config);
    const auto rep = parse_rep_spec(config.rep, max_order_from_env());
    const OrbitSystem orbit(rep, read_vector_file(config.psi_path));
    const FrameReport report = analyze_orbit(orbit, config.tol);
    if (!report.routes_agree) err << "frame-lab: warning: analysis routes disagree\n";
    emit(config, config.format == "csv" ? spectrum_csv(report.gram_spectrum) : dump(to_json(report)), out);
    return static_cast<int>(kOk);
  });
}

int cmd_bracket(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_inputs(config);
    const auto rep = parse_rep_spec(config.rep, max_order_from_env());
    const Eigen::VectorXcd psi = read_vector_file(config.psi_path);
    const OrbitSystem orbit(rep, psi);
    const bool csv = config.format == "csv";

    if (!rep.group()->abelian_structure()) {
      const std::string notice = "'" + rep.group()->spec() +
                                 "' is not abelian; the multiplier map is defined for abelian groups only, so the "
                                 "operator kernel and spectrum are reported instead";
      err << "frame-lab: notice: " << notice << "\n";
      const auto op = bracket_operator(rep, psi, psi);
      const Eigen::VectorXd spectrum = spectral_data(op, config.tol).eigenvalues;
      if (csv) {
        emit(config, complex_csv(op.coefficients().values()) + "\n" + spectrum_csv(spectrum), out);
      } else {
        nlohmann::json kernel = nlohmann::json::array();
        for (const auto& x : op.coefficients().values()) kernel.push_back({x.real(), x.imag()});
        emit(config,
             dump({{"schema", "frame-lab/1"},
                   {"rep", rep.label()},
                   {"kind", "operator"},
                   {"notice", notice},
                   {"kernel", kernel},
                   {"spectrum", std::vector<double>(spectrum.begin(), spectrum.end())}}),
             out);
      }
      return static_cast<int>(kOk);
    }

    std::string pipeline = "multiplier";
    std::optional<DualFunction> values;
    if (config.rep.starts_with("shift:")) {
      const auto [n, m] = spec_pair(config.rep);
      values = periodization_bracket(psi, n, m);
      pipeline = "periodization";
    } else if (config.rep.starts_with("gabor:")) {
      const auto [l, m] = spec_pair(config.rep);
      values = gabor_bracket_via_zak(psi, psi, l, m);
      pipeline = "zak";
    } else {
      values = scalar_bracket(rep, psi, psi);
    }

    nlohmann::json j = {{"schema", "frame-lab/1"},
                        {"rep", rep.label()},
                        {"kind", "scalar"},
                        {"pipeline", pipeline},
                        {"bracket", to_json(*values)}};
    int code = kOk;
    if (config.oracle) {
      const Eigen::VectorXcd oracle = scalar_bracket(rep, psi, psi).values();
      const double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
      const double dev = (values->values() - oracle).cwiseAbs().maxCoeff() / scale;
      const bool pass = dev <= 1e-10;
      j["oracle"] = {{"max_deviation", dev}, {"tolerance", 1e-10}, {"pass", pass}};
      if (!pass) {
        err << "frame-lab: bracket differs from the operator-side oracle by " << dev << "\n";
        code = kFailure;
      }
    }
    emit(config, csv ? to_csv(*values) : dump(j), out);
    return code;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto targets = config.groups.empty() ? default_verify_targets() : config.groups;
    const SuiteResult result = run_verify_suite(targets, config.seed, config.inject_fault);
    for (const auto& t : result.report["targets"]) {
      for (const auto& notice : t["notices"]) err << "frame-lab: notice: " << notice.get<std::string>() << "\n";
    }
    emit(config, dump(result.report), out);
    return result.pass ? static_cast<int>(kOk) : static_cast<int>(kFailure);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frame and Riesz analysis of finite group orbits", "frame-lab"};
  app.require_subcommand(1);
  RunConfig config;
  std::string groups;

  auto add_common = [&](CLI::App* sub, bool needs_inputs) {
    if (needs_inputs) {
      sub->add_option("--rep", config.rep, "regular:<group> | shift:N,M | gabor:L,M");
      sub->add_option("--psi", config.psi_path, "generator vector (JSON or CSV)");
    }
    sub->add_option("--tol", config.tol, "zero threshold relative to the largest eigenvalue");
    sub->add_option("--out", config.out_path, "output file (default: standard output)");
    sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", config.seed, "seed for randomized checks");
  };
  auto* analyze = app.add_subcommand("analyze", "Riesz/frame report for an orbit");
  add_common(analyze, true);
  auto* bracket = app.add_subcommand("bracket", "bracket values on the dual group");
  add_common(bracket, true);
  bracket->add_flag("--oracle", config.oracle, "cross-check against the operator-side bracket");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, false);
  verify->add_option("--groups", groups, "comma-separated group or model specs");
  verify->add_flag("--inject-fault", config.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "frame-lab: " << e.what() << "\n" << "run 'frame-lab --help' for usage\n";
    return kParseError;
  }
  if (!groups.empty()) config.groups = split_targets(groups);

  if (analyze->parsed()) return cmd_analyze(config, out, err);
  if (bracket->parsed()) return cmd_bracket(config, out, err);
  return cmd_verify(config, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"frame-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace framelab::cli
