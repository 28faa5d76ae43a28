#include "isoreg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "isoreg/data_io.hpp"
#include "isoreg/error.hpp"
#include "isoreg/model_selection.hpp"
#include "isoreg/variation.hpp"

namespace isoreg::cli {

namespace {

constexpr std::size_t kDefaultToleranceCap = 100'000;

double parse_real(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidArgument("invalid " + what + " '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = text.find(',', begin);
    out.push_back(parse_real(std::string_view(text).substr(begin, comma - begin), what));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

SortedSample load_input(const CliConfig& config, std::istream& in) {
  const LoadOptions opts{config.strict_ties};
  if (config.input == "-") return load_sample(in, opts);
  return load_sample_file(config.input, opts);
}

// Writes through a buffer so that a failed command leaves no partial file.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  std::ostringstream buffer;
  body(buffer);
  if (path == "-") {
    out << buffer.str();
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot open '" + path + "' for writing");
  file << buffer.str();
  if (!file) throw InvalidInput("write failure on '" + path + "'");
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const DegenerateCriterion& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerateCriterion;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

FitResult fit_from_config(const CliConfig& config, const SortedSample& sample,
                          std::ostream& err) {
  const StoppingPolicy policy = parse_stop(config.stop, config.grid, config.max_iter, sample.size());
  FitResult result = fit(sample, config.algorithm, policy);
  if (std::holds_alternative<ResidualTolerance>(policy.rule) &&
      result.trace.stop_reason == StopReason::cap_reached)
    err << "warning: tolerance not reached within " << policy.max_iterations
              << " iterations\n";
  return result;
}

}  // namespace

StoppingPolicy parse_stop(const std::string& stop, const std::string& grid, std::size_t max_iter,
                          std::size_t n) {
  const auto colon = stop.find(':');
  if (colon == std::string::npos) throw InvalidArgument("invalid --stop '" + stop + "'");
  const std::string kind = stop.substr(0, colon);
  const std::string arg = stop.substr(colon + 1);

  StoppingPolicy policy;
  policy.max_iterations = max_iter;
  if (kind == "fixed") {
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (arg.empty() || ec != std::errc{} || ptr != arg.data() + arg.size() || k == 0)
      throw InvalidArgument("invalid --stop '" + stop + "'");
    if (max_iter != 0 && max_iter < k) throw InvalidArgument("--max-iter below fixed k");
    policy.rule = FixedIterations{k};
  } else if (kind == "tol") {
    const double eps = parse_real(arg, "--stop tolerance");
    if (!(eps >= 0.0)) throw InvalidArgument("--stop tolerance must be nonnegative");
    policy.rule = ResidualTolerance{eps};
    if (policy.max_iterations == 0) policy.max_iterations = kDefaultToleranceCap;
  } else if (kind == "criterion") {
    const auto criterion = parse_criterion(arg);
    if (!criterion) throw InvalidArgument("unknown criterion '" + arg + "'");
    CriterionStop rule{*criterion, grid.empty() ? default_grid(n) : parse_grid(grid)};
    const std::size_t top = *std::max_element(rule.grid.begin(), rule.grid.end());
    if (max_iter != 0 && top > max_iter) throw InvalidArgument("--grid exceeds --max-iter");
    policy.rule = std::move(rule);
  } else {
    throw InvalidArgument("invalid --stop '" + stop + "'");
  }
  if (!grid.empty() && kind != "criterion")
    throw InvalidArgument("--grid only applies to --stop criterion:<name>");
  return policy;
}

int cmd_fit(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SortedSample sample = load_input(config, in);
    const FitResult result = fit_from_config(config, sample, err);
    emit(config.output, out, [&](std::ostream& s) { write_fit(result, s); });
    if (!config.trace_output.empty()) {
      const SelectionReport* report = result.report ? &*result.report : nullptr;
      emit(config.trace_output, out, [&](std::ostream& s) { write_trace(result.trace, report, s); });
    }
    return static_cast<int>(kOk);
  });
}

int cmd_decompose(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SortedSample sample = load_input(config, in);
    const DecompositionPair pair = jordan_decompose(sample.y(), sample.w());
    emit(config.output, out, [&](std::ostream& s) { write_fit(pair, sample.y(), sample, s); });
    return static_cast<int>(kOk);
  });
}

int cmd_trace(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.format != "json" && config.format != "long")
      throw InvalidArgument("--format must be json or long for trace");
    const SortedSample sample = load_input(config, in);
    const FitResult result = fit_from_config(config, sample, err);
    const SelectionReport* report = result.report ? &*result.report : nullptr;
    emit(config.output, out, [&](std::ostream& s) {
      if (config.format == "long")
        write_trace_long(result.trace, report, s);
      else
        write_trace(result.trace, report, s);
    });
    return static_cast<int>(kOk);
  });
}

int cmd_simulate(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.format != "csv" && config.format != "long")
      throw InvalidArgument("--format must be csv or long for simulate");
    const SimulatedData data = generate(config.signal);
    emit(config.output, out, [&](std::ostream& s) { write_sample(data.sample, s, data.truth); });
    if (config.k_max > 0) {
      const auto rows = experiment_mse(config.signal, config.algorithm, config.k_max);
      const std::string& path = config.experiment_output.empty() ? std::string("-")
                                                                 : config.experiment_output;
      emit(path, out, [&](std::ostream& s) {
        if (config.format == "long")
          write_experiment_long(rows, s);
        else
          write_experiment(rows, s);
      });
    }
    return static_cast<int>(kOk);
  });
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Iterative isotonic regression for functions of bounded variation", "isoreg"};
  app.require_subcommand(1);

  CliConfig config;
  std::string algorithm = "iir";

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("-i,--input", config.input, "Input CSV with columns x,y[,w]; '-' for stdin");
    sub->add_option("-o,--output", config.output, "Output path; '-' for stdout");
    sub->add_flag("--strict-ties", config.strict_ties, "Reject repeated abscissas");
  };
  auto add_fit_options = [&](CLI::App* sub) {
    sub->add_option("-a,--algorithm", algorithm, "iir or iibr")->check(CLI::IsMember({"iir", "iibr"}));
    sub->add_option("--stop", config.stop, "fixed:<k>, tol:<eps> or criterion:<aic|bic|aicc|gcv>");
    sub->add_option("--grid", config.grid, "Iteration grid a..b[:step] for criterion stopping");
    sub->add_option("--max-iter", config.max_iter, "Iteration cap");
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit and write the estimate as CSV");
  add_input(fit_cmd);
  add_fit_options(fit_cmd);
  fit_cmd->add_option("--trace-output", config.trace_output, "Also write the trace JSON here");

  CLI::App* decompose_cmd =
      app.add_subcommand("decompose", "Write the Jordan minimum-variation decomposition of y");
  add_input(decompose_cmd);

  CLI::App* trace_cmd = app.add_subcommand("trace", "Fit and write the iteration trace");
  add_input(trace_cmd);
  add_fit_options(trace_cmd);
  trace_cmd->add_option("--format", config.format, "json or long");

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Generate a noisy bounded-variation sample");
  std::string kind = "piecewise_constant";
  std::string breakpoints = "0.25,0.5,0.75";
  std::string levels = "0,1,0,1";
  std::string sim_format = "csv";
  sim_cmd->add_option("-o,--output", config.output, "Sample CSV path; '-' for stdout");
  sim_cmd->add_option("--kind", kind, "piecewise_constant or bv_smooth_mix");
  sim_cmd->add_option("--n", config.signal.n, "Number of design points");
  sim_cmd->add_option("--noise", config.signal.noise_sd, "Noise standard deviation");
  sim_cmd->add_option("--seed", config.signal.seed, "Generator seed");
  sim_cmd->add_option("--breakpoints", breakpoints, "Comma-separated jump locations in (0,1)");
  sim_cmd->add_option("--levels", levels, "Comma-separated levels, one more than breakpoints");
  sim_cmd->add_option("--amplitude", config.signal.smooth_amplitude, "Smooth component amplitude");
  sim_cmd->add_option("--frequency", config.signal.smooth_frequency, "Smooth component frequency");
  sim_cmd->add_option("--k-max", config.k_max, "Run the per-iteration experiment up to k-max");
  sim_cmd->add_option("--experiment-output", config.experiment_output, "Experiment table path");
  sim_cmd->add_option("-a,--algorithm", algorithm, "iir or iibr")->check(CLI::IsMember({"iir", "iibr"}));
  sim_cmd->add_option("--format", sim_format, "Experiment table layout: csv or long");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("isoreg");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  config.algorithm = *parse_algorithm(algorithm);
  if (fit_cmd->parsed()) {
    config.command = Command::fit;
    return cmd_fit(config, in, out, err);
  }
  if (decompose_cmd->parsed()) {
    config.command = Command::decompose;
    return cmd_decompose(config, in, out, err);
  }
  if (trace_cmd->parsed()) {
    config.command = Command::trace;
    return cmd_trace(config, in, out, err);
  }
  config.command = Command::simulate;
  return guarded(err, [&] {
    const auto parsed_kind = parse_signal_kind(kind);
    if (!parsed_kind) throw InvalidArgument("unknown --kind '" + kind + "'");
    config.signal.kind = *parsed_kind;
    config.signal.breakpoints = parse_real_list(breakpoints, "--breakpoints");
    config.signal.levels = parse_real_list(levels, "--levels");
    config.format = sim_format;
    return cmd_simulate(config, out, err);
  });
}

}  // namespace isoreg::cli
