#ifndef TRUNCSTAT_REPORT_HPP
#define TRUNCSTAT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "truncstat/sample.hpp"
#include "truncstat/score.hpp"
#include "truncstat/simulation.hpp"

namespace truncstat {

// Reads a truncated sample from a CSV file with header "x,y". Row numbers in
// error messages are 1-based data rows (the header is row 0).
TruncatedSample parse_csv(const std::string& path);

// Score mini-grammar: identity | indicator:<t> | power:<k> | table:<path>.
// A table file is CSV with header "x,value".
ScoreFunction parse_phi(const std::string& spec);

// serialize a double with 17 significant digits (round-trips bit-exactly)
std::string format_double(double v);

enum class EstimatorChoice { lynden_bell, modified, both };
EstimatorChoice parse_estimator(const std::string& name);

struct RunConfig {
    std::string subcommand;               // estimate | integrate | simulate | coverage | represent | holes
    std::string input_path;               // CSV sample, where applicable
    std::string output_path;              // empty = stdout
    std::string phi_spec = "identity";
    std::string model_spec;
    std::vector<std::size_t> n_list;      // sample sizes (studies) or draw size (represent)
    std::size_t reps = 10000;
    std::uint64_t seed = 1;
    double level = 0.95;
    std::string estimator = "both";
    int threads = 0;                      // 0 = TRUNCSTAT_THREADS or hardware
};

// Validates the config, executes the subcommand, and writes the report to
// the output path (or stdout). Returns the report text. Domain errors
// propagate as truncstat::Error.
std::string run(const RunConfig& config);

// report renderers, exposed for tests
std::string render_study_csv(const StudyReport& report);

}  // namespace truncstat

#endif
