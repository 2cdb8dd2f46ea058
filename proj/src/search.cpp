#include "modelforge/search.hpp"

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "modelforge/flatten.hpp"
#include "modelforge/ground.hpp"

namespace modelforge::search {

std::atomic<bool>& interrupt_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

SearchReport run_search(std::string_view input_text, const SearchConfig& config,
                        std::ostream& out, const FoundModelCallback& on_model) {
  auto start = std::chrono::steady_clock::now();
  SearchReport report;

  lang::InputProblem problem = lang::parse_input(input_text);
  for (const std::string& w : problem.warnings)
    out << "WARNING: " << w << ".\n";

  std::vector<flatten::FlatClause> flat;
  for (const lang::Clause& c : problem.theory)
    for (flatten::FlatClause& fc : flatten::flatten_clause(c)) {
      out << "Processing clause: " << flatten::to_string(fc) << ".\n";
      flat.push_back(std::move(fc));
    }

  Deadline deadline = Deadline::after_seconds(config.max_seconds);
  MemoryMeter meter(config.max_kbytes);
  long long total_models = 0;

  for (int n = config.start_n; n <= config.last_n(); ++n) {
    lang::validate(problem, n);
    long long meter_base = meter.used();
    sat::SatStatus status;
    long long found_here = 0;
    try {
      ground::GroundProblem gp = ground::build_ground_problem(
          flat, problem.constraints,
          {config.distinct_constants, config.qg_symmetry}, problem.symbols, n,
          &out, &meter, &deadline);

      sat::Cnf cnf;
      cnf.num_vars = static_cast<int>(gp.map.total_vars());
      cnf.clauses = std::move(gp.clauses);
      sat::Solver solver(std::move(cnf), &meter, &interrupt_flag());

      sat::SatLimits limits;
      limits.max_models = config.max_models - total_models;
      limits.unit_subsumption = false;

      auto on_sat_model = [&](const sat::Assignment& assignment) {
        model::FirstOrderModel m = model::extract(assignment, gp.map);
        if (!model::verify(m, problem.theory))
          throw std::logic_error("extracted model fails verification");
        ++found_here;
        int index = static_cast<int>(total_models + found_here);
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (config.print_tabular) out << model::print_tabular(m, index, seconds);
        if (config.print_parsable) out << model::print_parsable(m);
        if (config.print_ivy) out << model::print_ivy(m) << '\n';
        if (on_model) on_model(m, n);
      };
      status = solver.solve(limits, deadline, on_sat_model).status;
    } catch (const TimeLimitReached&) {
      status = sat::SatStatus::TimeLimit;
    } catch (const MemoryLimitReached&) {
      status = sat::SatStatus::MemoryLimit;
    }
    total_models += found_here;
    report.models = total_models;
    // Per-size storage is freed here; only found models count globally.
    meter.release(meter.used() - meter_base);

    if (status == sat::SatStatus::TimeLimit) {
      report.code = ExitCode::MaxSeconds;
      return report;
    }
    if (status == sat::SatStatus::MemoryLimit) {
      report.code = ExitCode::MaxMem;
      return report;
    }
    if (total_models >= config.max_models) {
      report.code = ExitCode::MaxModels;
      return report;
    }
  }
  report.code = total_models > 0 ? ExitCode::AllModels : ExitCode::Unsatisfiable;
  return report;
}

std::vector<std::string> filter_identities(std::istream& equations, int max_n,
                                           std::ostream& diagnostics) {
  std::vector<std::string> survivors;
  std::string line;
  int line_number = 0;
  while (std::getline(equations, line)) {
    ++line_number;
    std::string eq = line;
    // Trim surrounding whitespace.
    std::size_t b = eq.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = eq.find_last_not_of(" \t\r");
    eq = eq.substr(b, e - b + 1);
    if (eq[0] == '%') continue;
    if (eq.back() != '.') eq += '.';

    std::string input = "list(usable). " + eq + " f(0,1) != f(1,0). "
                        "end_of_list.\n";
    SearchConfig config;
    config.start_n = 2;
    config.end_n = max_n;
    std::ostringstream sink;
    try {
      SearchReport report = run_search(input, config, sink);
      if (report.code == ExitCode::Unsatisfiable) survivors.push_back(line);
    } catch (const InputError& err) {
      diagnostics << "line " << line_number << ": " << err.what()
                  << " (skipped)\n";
    }
  }
  return survivors;
}

namespace {

extern "C" void on_sigint(int) { interrupt_flag().store(true); }

extern "C" void on_sigsegv(int) { std::_Exit(static_cast<int>(ExitCode::Segv)); }

void install_handlers() {
  std::signal(SIGINT, on_sigint);
  std::signal(SIGSEGV, on_sigsegv);
}

const char kUsage[] =
    "usage: modelforge [options] < input-file\n"
    "       modelforge filter <equations-file> [-N <max-size>]\n"
    "options:\n"
    "  -n <size>    starting (and default final) domain size; default 2\n"
    "  -N <size>    final domain size; sizes n..N are tried in order\n"
    "  -c           make distinct constants denote distinct elements\n"
    "  -p           print models as tables\n"
    "  -P           print models as parsable facts\n"
    "  -I           print models as S-expressions\n"
    "  -m <count>   stop after this many models; default 1\n"
    "  -t <seconds> total time limit; default unlimited\n"
    "  -k <kbytes>  memory limit; default 48000\n"
    "  -x           add symmetry-cutting units for binary function f\n"
    "  -h           print this summary and exit\n"
    "exit codes: 11 internal error, 12 unsatisfiable, 13 time limit,\n"
    "  14 memory limit, 15 model count reached, 16 all models found,\n"
    "  17 interrupted, 18 crash, 19 input error\n";

// One-letter options; the value may be attached (-n4) or separate (-n 4).
struct ArgReader {
  int argc;
  char** argv;
  int pos = 1;

  std::string value(const std::string& rest, char flag) {
    if (!rest.empty()) return rest;
    if (pos + 1 >= argc)
      throw InputError(std::string("option -") + flag + " needs a value");
    return argv[++pos];
  }
};

long long parse_int(const std::string& text, char flag) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("option -") + flag +
                     " needs an integer, got '" + text + "'");
  }
}

double parse_seconds(const std::string& text, char flag) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("option -") + flag + " needs a number, got '" +
                     text + "'");
  }
}

int filter_main(int argc, char** argv) {
  std::string path;
  int max_n = 4;
  ArgReader args{argc, argv, 2};
  for (; args.pos < argc; ++args.pos) {
    std::string arg = argv[args.pos];
    if (arg == "-N") {
      max_n = static_cast<int>(parse_int(args.value("", 'N'), 'N'));
    } else if (arg.rfind("-N", 0) == 0) {
      max_n = static_cast<int>(parse_int(arg.substr(2), 'N'));
    } else if (!arg.empty() && arg[0] == '-') {
      throw InputError("unknown filter option '" + arg + "'");
    } else if (path.empty()) {
      path = arg;
    } else {
      throw InputError("unexpected filter argument '" + arg + "'");
    }
  }
  if (path.empty()) throw InputError("filter needs an equations file");
  if (max_n < 2) throw InputError("filter bound must be at least 2");
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  for (const std::string& eq : filter_identities(in, max_n, std::cerr))
    std::cout << eq << '\n';
  return 0;
}

}  // namespace

int modelforge_main(int argc, char** argv) {
  install_handlers();
  try {
    if (argc > 1 && std::string(argv[1]) == "filter") return filter_main(argc, argv);

    SearchConfig config;
    bool start_set = false;
    ArgReader args{argc, argv};
    for (; args.pos < argc; ++args.pos) {
      std::string arg = argv[args.pos];
      if (arg.size() < 2 || arg[0] != '-')
        throw InputError("unexpected argument '" + arg + "'");
      char flag = arg[1];
      std::string rest = arg.substr(2);
      switch (flag) {
        case 'n':
          config.start_n = static_cast<int>(parse_int(args.value(rest, 'n'), 'n'));
          start_set = true;
          break;
        case 'N':
          config.end_n = static_cast<int>(parse_int(args.value(rest, 'N'), 'N'));
          break;
        case 'c': config.distinct_constants = true; break;
        case 'p': config.print_tabular = true; break;
        case 'P': config.print_parsable = true; break;
        case 'I': config.print_ivy = true; break;
        case 'm':
          config.max_models = parse_int(args.value(rest, 'm'), 'm');
          break;
        case 't':
          config.max_seconds = parse_seconds(args.value(rest, 't'), 't');
          break;
        case 'k':
          config.max_kbytes = parse_int(args.value(rest, 'k'), 'k');
          break;
        case 'x': config.qg_symmetry = true; break;
        case 'h':
          std::cout << kUsage;
          return 0;
        default:
          throw InputError("unknown option '" + arg + "'");
      }
    }
    if (config.start_n < 1) throw InputError("domain size must be at least 1");
    if (config.end_n >= 0 && config.end_n < config.start_n)
      throw InputError("-N must not be smaller than -n");
    if (config.max_models < 1) throw InputError("-m must be at least 1");
    (void)start_set;

    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    SearchReport report = run_search(buffer.str(), config, std::cout);
    std::cout.flush();
    return static_cast<int>(report.code);
  } catch (const InputError& err) {
    std::cerr << "Input error: " << err.what();
    if (err.line >= 0) std::cerr << " (line " << err.line << ")";
    std::cerr << '\n';
    return static_cast<int>(ExitCode::InputError);
  } catch (const Interrupted&) {
    std::cout.flush();
    return static_cast<int>(ExitCode::Interrupt);
  } catch (const std::exception& err) {
    std::cerr << "Error: " << err.what() << '\n';
    return static_cast<int>(ExitCode::Abend);
  }
}

int anldp_main(int argc, char** argv) {
  install_handlers();
  try {
    bool print_models = false;
    sat::SatLimits limits;
    ArgReader args{argc, argv};
    for (; args.pos < argc; ++args.pos) {
      std::string arg = argv[args.pos];
      if (arg.size() < 2 || arg[0] != '-')
        throw InputError("unexpected argument '" + arg + "'");
      char flag = arg[1];
      std::string rest = arg.substr(2);
      switch (flag) {
        case 'p': print_models = true; break;
        case 'm': limits.max_models = parse_int(args.value(rest, 'm'), 'm'); break;
        case 't': limits.max_seconds = parse_seconds(args.value(rest, 't'), 't'); break;
        case 'k': limits.max_kbytes = parse_int(args.value(rest, 'k'), 'k'); break;
        case 's': limits.unit_subsumption = true; break;
        default: throw InputError("unknown option '" + arg + "'");
      }
    }
    if (limits.max_models < 1) throw InputError("-m must be at least 1");

    sat::Cnf cnf = sat::parse_integer_stream(std::cin);
    int num_vars = cnf.num_vars;
    MemoryMeter meter(limits.max_kbytes);
    sat::Solver solver(std::move(cnf), &meter, &interrupt_flag());
    auto on_model = [&](const sat::Assignment& a) {
      if (!print_models) return;
      for (int v = 1; v <= num_vars; ++v) {
        if (v > 1) std::cout << ' ';
        std::cout << (a[v] ? v : -v);
      }
      std::cout << '\n';
    };
    sat::SatOutcome outcome = solver.solve(limits, on_model);
    std::cout.flush();
    switch (outcome.status) {
      case sat::SatStatus::Unsatisfiable:
        return static_cast<int>(ExitCode::Unsatisfiable);
      case sat::SatStatus::TimeLimit:
        return static_cast<int>(ExitCode::MaxSeconds);
      case sat::SatStatus::MemoryLimit:
        return static_cast<int>(ExitCode::MaxMem);
      case sat::SatStatus::ModelsFound:
        return static_cast<int>(outcome.models >= limits.max_models
                                    ? ExitCode::MaxModels
                                    : ExitCode::AllModels);
    }
    return static_cast<int>(ExitCode::Abend);
  } catch (const MemoryLimitReached&) {
    return static_cast<int>(ExitCode::MaxMem);
  } catch (const InputError& err) {
    std::cerr << "Input error: " << err.what() << '\n';
    return static_cast<int>(ExitCode::InputError);
  } catch (const Interrupted&) {
    return static_cast<int>(ExitCode::Interrupt);
  } catch (const std::exception& err) {
    std::cerr << "Error: " << err.what() << '\n';
    return static_cast<int>(ExitCode::Abend);
  }
}

}  // namespace modelforge::search
