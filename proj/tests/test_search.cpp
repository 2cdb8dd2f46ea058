#include <doctest.h>

#include <sstream>
#include <string>

#include "modelforge/model.hpp"
#include "modelforge/search.hpp"

using namespace modelforge;
using search::ExitCode;
using search::SearchConfig;
using search::SearchReport;

namespace {

const char* kGroupInput =
    "list(usable).\n"
    "  e * x = x.\n"
    "  g(x) * x = e.\n"
    "  (x * y) * z = x * (y * z).\n"
    "  a * b != b * a.\n"
    "end_of_list.\n";

const char* kEvenInput =
    "list(usable).\n"
    "  even(a).\n"
    "  -even(x) | even(s(s(x))).\n"
    "  -even(s(a)).\n"
    "end_of_list.\n";

const char* kDollarInput =
    "set(hyper_res).\n"
    "list(sos).\n"
    "  -P(x) | P($SUM(x,x)).\n"
    "  P(1).\n"
    "  -P(2).\n"
    "end_of_list.\n";

SearchReport run(const char* input, SearchConfig config, std::string* trace,
                 const search::FoundModelCallback& on_model = nullptr) {
  std::ostringstream out;
  SearchReport report = search::run_search(input, config, out, on_model);
  if (trace) *trace = out.str();
  return report;
}

}  // namespace

TEST_CASE("no noncommutative group of order up to 5 exists") {
  SearchConfig config;
  config.start_n = 2;
  config.end_n = 5;
  SearchReport report = run(kGroupInput, config, nullptr);
  CHECK(report.code == ExitCode::Unsatisfiable);
  CHECK(report.models == 0);
}

TEST_CASE("a noncommutative group of order 6 is found and verified") {
  SearchConfig config;
  config.start_n = 2;
  config.end_n = 6;
  int found_n = 0;
  std::vector<int> star;
  SearchReport report = run(kGroupInput, config, nullptr,
                            [&](const model::FirstOrderModel& m, int n) {
                              found_n = n;
                              for (const auto& t : m.functions)
                                if (t.symbol->name == "*") star = t.values;
                            });
  CHECK(report.code == ExitCode::MaxModels);
  CHECK(report.models == 1);
  CHECK(found_n == 6);
  REQUIRE(star.size() == 36);
  // Noncommutative: some cell differs from its transpose.
  bool commutative = true;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      commutative = commutative && star[i * 6 + j] == star[j * 6 + i];
  CHECK_FALSE(commutative);
}

TEST_CASE("the trace shows flattened clauses and function axioms in order") {
  SearchConfig config;
  config.start_n = 3;
  std::string trace;
  SearchReport report = run(kEvenInput, config, &trace);
  CHECK(report.code == ExitCode::MaxModels);

  auto pos = [&](const char* needle) { return trace.find(needle); };
  std::size_t p1 = pos("Processing clause: -a(v0) | even(v0).\n");
  std::size_t p2 = pos(
      "Processing clause: -s(v0,v1) | -s(v1,v2) | -even(v0) | even(v2).\n");
  std::size_t p3 = pos("Processing clause: -a(v0) | -s(v0,v1) | -even(v1).\n");
  std::size_t f1 = pos("Function s/2 well-defined and closed.\n");
  std::size_t f2 = pos("Function a/1 well-defined and closed.\n");
  REQUIRE(p1 != std::string::npos);
  REQUIRE(p2 != std::string::npos);
  REQUIRE(p3 != std::string::npos);
  REQUIRE(f1 != std::string::npos);
  REQUIRE(f2 != std::string::npos);
  CHECK(p1 < p2);
  CHECK(p2 < p3);
  CHECK(p3 < f1);
  CHECK(f1 < f2);
}

TEST_CASE("model printing honors the output flags") {
  SearchConfig config;
  config.start_n = 3;
  config.print_tabular = true;
  config.print_parsable = true;
  config.print_ivy = true;
  std::string trace;
  run(kEvenInput, config, &trace);
  CHECK(trace.find("======================= Model #1 at ") !=
        std::string::npos);
  CHECK(trace.find("begin_model(3).") != std::string::npos);
  CHECK(trace.find("end_model.") != std::string::npos);
  CHECK(trace.find("(model (size 3)") != std::string::npos);
}

TEST_CASE("dollar symbols are ordinary symbols") {
  SearchConfig config;
  config.start_n = 3;
  SearchReport report = run(kDollarInput, config, nullptr);
  CHECK(report.code == ExitCode::MaxModels);

  // The domain element 2 does not fit a domain of size 2.
  config.start_n = 2;
  std::ostringstream out;
  CHECK_THROWS_AS(search::run_search(kDollarInput, config, out), InputError);
}

TEST_CASE("reaching the model bound takes precedence over exhaustion") {
  SearchConfig config;
  config.start_n = 1;
  config.max_models = 1;
  SearchReport report = run("list(usable). P(0). end_of_list.", config, nullptr);
  CHECK(report.code == ExitCode::MaxModels);
  CHECK(report.models == 1);
}

TEST_CASE("exhausting the space below the bound reports all models") {
  SearchConfig config;
  config.start_n = 1;
  config.max_models = 100;
  SearchReport report =
      run("list(usable). P(0) | Q(0). end_of_list.", config, nullptr);
  CHECK(report.code == ExitCode::AllModels);
  CHECK(report.models == 3);

  config.max_models = 3;
  report = run("list(usable). P(0) | Q(0). end_of_list.", config, nullptr);
  CHECK(report.code == ExitCode::MaxModels);
}

TEST_CASE("time and memory budgets end the search") {
  SearchConfig config;
  config.start_n = 6;
  config.max_seconds = 0;
  CHECK(run(kGroupInput, config, nullptr).code == ExitCode::MaxSeconds);

  SearchConfig tight;
  tight.start_n = 6;
  tight.max_kbytes = 16;
  CHECK(run(kGroupInput, tight, nullptr).code == ExitCode::MaxMem);
}

TEST_CASE("unknown commands are surfaced as warnings") {
  SearchConfig config;
  config.start_n = 2;
  std::string trace;
  run("set(hyper_res).\nlist(usable). P(x). end_of_list.", config, &trace);
  CHECK(trace.find("WARNING: ") != std::string::npos);
}

TEST_CASE("identity filtering keeps only commutativity-forcing equations") {
  std::istringstream in(
      "f(x,y) = f(y,x).\n"
      "% a comment line\n"
      "\n"
      "f(x,y) = x.\n");
  std::ostringstream diag;
  auto survivors = search::filter_identities(in, 4, diag);
  REQUIRE(survivors.size() == 1);
  CHECK(survivors[0] == "f(x,y) = f(y,x).");
  CHECK(diag.str().empty());
}

TEST_CASE("unparsable filter lines are reported and skipped") {
  std::istringstream in(
      "f(x,(y\n"
      "f(x,y) = f(y,x)\n");  // missing final period is tolerated
  std::ostringstream diag;
  auto survivors = search::filter_identities(in, 3, diag);
  REQUIRE(survivors.size() == 1);
  CHECK(survivors[0] == "f(x,y) = f(y,x)");
  CHECK(diag.str().find("line 1") != std::string::npos);
}
