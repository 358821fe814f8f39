#include "truncstat/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <utility>

#include "truncstat/error.hpp"
#include "truncstat/estimator.hpp"
#include "truncstat/inference.hpp"

namespace truncstat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t' || s[a] == '\r')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
    return s.substr(a, b - a);
}

double parse_field(const std::string& tok, std::size_t row, const char* column) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != tok.size() || tok.empty() || !std::isfinite(v)) {
        throw Error("cli_io", "BadNumber",
                    "row " + std::to_string(row) + ", column " + column + ": '" + tok + "'");
    }
    return v;
}

std::vector<std::pair<double, double>> parse_two_column_csv(const std::string& path,
                                                            const std::string& header) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cli_io", "FileNotFound", path);
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != header) {
        throw Error("cli_io", "BadHeader", path + ": expected header '" + header + "'");
    }
    const std::string col_x = header.substr(0, header.find(','));
    const std::string col_y = header.substr(header.find(',') + 1);
    std::vector<std::pair<double, double>> rows;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::size_t comma = t.find(',');
        if (comma == std::string::npos) {
            throw Error("cli_io", "BadNumber",
                        "row " + std::to_string(row) + ": expected two comma-separated fields");
        }
        const double x = parse_field(trim(t.substr(0, comma)), row, col_x.c_str());
        const double y = parse_field(trim(t.substr(comma + 1)), row, col_y.c_str());
        rows.emplace_back(x, y);
    }
    return rows;
}

std::string json_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s + "]";
}

std::string json_array(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string holes_json(const HoleReport& holes, const std::string& indent) {
    std::string s = "{\n";
    s += indent + "  \"inner_hole_indices\": " + json_array(holes.inner_hole_indices) + ",\n";
    s += indent + "  \"first_inner_hole\": " + std::to_string(holes.first_inner_hole) + ",\n";
    s += indent + "  \"zeroed_mass_points\": " + json_array(holes.zeroed_mass_points) + "\n";
    s += indent + "}";
    return s;
}

std::string warnings_json(const LBEstimate& est) {
    std::vector<std::string> warnings;
    if (est.left_support_warning) {
        warnings.push_back(
            "min truncator is not below min lifetime; the support condition for full "
            "recovery of the lifetime distribution may fail");
    }
    if (est.holes.first_inner_hole > 0) {
        warnings.push_back("inner risk-set hole at position " +
                           std::to_string(est.holes.first_inner_hole) +
                           "; product-limit mass beyond it is zero");
    }
    std::string s = "[";
    for (std::size_t i = 0; i < warnings.size(); ++i) {
        if (i) s += ", ";
        s += json_string(warnings[i]);
    }
    return s + "]";
}

double total(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cli_io", "WriteFailed", path);
    }
    out << text;
}

SortedSample load_sample(const RunConfig& config) {
    if (config.input_path.empty()) {
        throw Error("cli_io", "MissingArgument", config.subcommand + " needs --input");
    }
    return validate_and_sort(parse_csv(config.input_path));
}

std::string run_estimate(const RunConfig& config, const SortedSample& sample,
                         EstimatorChoice choice) {
    const LBEstimate est = lynden_bell(sample);
    std::string s = "{\n";
    s += "  \"command\": \"estimate\",\n";
    s += "  \"input\": " + json_string(config.input_path) + ",\n";
    s += "  \"n\": " + std::to_string(sample.n()) + ",\n";
    s += "  \"m\": " + std::to_string(sample.m()) + ",\n";
    s += "  \"estimator\": " + json_string(config.estimator) + ",\n";
    s += "  \"points\": " + json_array(est.points) + ",\n";
    if (choice != EstimatorChoice::modified) {
        s += "  \"lynden_bell\": {\n";
        s += "    \"weights\": " + json_array(est.weights) + ",\n";
        s += "    \"cdf\": " + json_array(est.cdf) + ",\n";
        s += "    \"hazard\": " + json_array(est.hazard) + ",\n";
        s += "    \"total_mass\": " + format_double(total(est.weights)) + "\n";
        s += "  },\n";
    }
    if (choice != EstimatorChoice::lynden_bell) {
        const ModifiedEstimate mod = modified_weights(sample);
        s += "  \"modified\": {\n";
        s += "    \"weights\": " + json_array(mod.weights) + ",\n";
        s += "    \"total_mass\": " + format_double(total(mod.weights)) + "\n";
        s += "  },\n";
    }
    s += "  \"holes\": " + holes_json(est.holes, "  ") + ",\n";
    s += "  \"warnings\": " + warnings_json(est) + "\n";
    s += "}\n";
    return s;
}

std::string run_integrate(const RunConfig& config, const SortedSample& sample,
                          EstimatorChoice choice) {
    const ScoreFunction phi = parse_phi(config.phi_spec);
    const LBEstimate est = lynden_bell(sample);
    const double sigma2 = plugin_variance(sample, phi);

    double primary = 0.0;
    double modified_value = 0.0;
    if (choice != EstimatorChoice::modified) {
        primary = lb_integral(est, phi);
    }
    if (choice != EstimatorChoice::lynden_bell) {
        modified_value = modified_integral(modified_weights(sample), phi);
        if (choice == EstimatorChoice::modified) primary = modified_value;
    }
    const InferenceResult ci = interval_from(primary, sigma2, sample.n(), config.level);

    std::string s = "{\n";
    s += "  \"command\": \"integrate\",\n";
    s += "  \"input\": " + json_string(config.input_path) + ",\n";
    s += "  \"n\": " + std::to_string(sample.n()) + ",\n";
    s += "  \"phi\": " + json_string(config.phi_spec) + ",\n";
    s += "  \"estimator\": " + json_string(config.estimator) + ",\n";
    s += "  \"estimate\": " + format_double(primary) + ",\n";
    if (choice == EstimatorChoice::both) {
        s += "  \"modified_estimate\": " + format_double(modified_value) + ",\n";
    }
    s += "  \"sigma2\": " + format_double(sigma2) + ",\n";
    s += "  \"level\": " + format_double(config.level) + ",\n";
    s += "  \"ci\": [" + format_double(ci.lo) + ", " + format_double(ci.hi) + "],\n";
    s += "  \"warnings\": " + warnings_json(est) + "\n";
    s += "}\n";
    return s;
}

std::string run_holes(const RunConfig& config, const SortedSample& sample) {
    const HoleReport holes = detect_holes(sample);
    std::string s = "{\n";
    s += "  \"command\": \"holes\",\n";
    s += "  \"input\": " + json_string(config.input_path) + ",\n";
    s += "  \"n\": " + std::to_string(sample.n()) + ",\n";
    s += "  \"m\": " + std::to_string(sample.m()) + ",\n";
    s += "  \"points\": " + json_array(sample.distinct_x) + ",\n";
    s += "  \"holes\": " + holes_json(holes, "  ") + "\n";
    s += "}\n";
    return s;
}

std::string run_represent(const RunConfig& config) {
    if (config.model_spec.empty()) {
        throw Error("cli_io", "MissingArgument", "represent needs --model");
    }
    const TruncationModel model = make_model(config.model_spec);
    const ScoreFunction phi = parse_phi(config.phi_spec);

    SortedSample sample;
    bool drawn = false;
    if (!config.input_path.empty()) {
        sample = validate_and_sort(parse_csv(config.input_path));
    } else {
        if (config.n_list.empty()) {
            throw Error("cli_io", "MissingArgument", "represent needs --input or --n");
        }
        sample = validate_and_sort(draw_observed_sample(model, config.n_list.front(), config.seed));
        drawn = true;
    }
    const RepresentationTerms terms = representation_terms(sample, model, phi);

    double mean = total(terms.per_obs) / static_cast<double>(terms.per_obs.size());
    double var = 0.0;
    for (double e : terms.per_obs) var += (e - mean) * (e - mean);
    var /= static_cast<double>(terms.per_obs.size());

    std::string s = "{\n";
    s += "  \"command\": \"represent\",\n";
    s += "  \"model\": " + json_string(config.model_spec) + ",\n";
    s += "  \"phi\": " + json_string(config.phi_spec) + ",\n";
    if (drawn) {
        s += "  \"seed\": " + std::to_string(config.seed) + ",\n";
    } else {
        s += "  \"input\": " + json_string(config.input_path) + ",\n";
    }
    s += "  \"n\": " + std::to_string(sample.n()) + ",\n";
    s += "  \"scaled_error\": " + format_double(terms.scaled_error) + ",\n";
    s += "  \"marginal_term\": " + format_double(terms.marginal_term) + ",\n";
    s += "  \"risk_term\": " + format_double(terms.risk_term) + ",\n";
    s += "  \"remainder\": " + format_double(terms.remainder) + ",\n";
    s += "  \"per_obs_mean\": " + format_double(mean) + ",\n";
    s += "  \"per_obs_variance\": " + format_double(var) + "\n";
    s += "}\n";
    return s;
}

}  // namespace

TruncatedSample parse_csv(const std::string& path) {
    const auto rows = parse_two_column_csv(path, "x,y");
    std::vector<std::size_t> violations;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].second > rows[i].first) violations.push_back(i + 1);
    }
    if (!violations.empty()) {
        throw Error("cli_io", "TruncationViolated", "y > x at rows " + join_indices(violations));
    }
    TruncatedSample out;
    out.pairs = rows;
    return out;
}

ScoreFunction parse_phi(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "identity" && arg.empty()) {
        return ScoreFunction::identity();
    }
    if (kind == "indicator" || kind == "power") {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != arg.size() || arg.empty() || !std::isfinite(v)) {
            throw Error("cli_io", "BadScoreSpec", spec);
        }
        return kind == "indicator" ? ScoreFunction::indicator(v) : ScoreFunction::power(v);
    }
    if (kind == "table" && !arg.empty()) {
        const auto rows = parse_two_column_csv(arg, "x,value");
        std::map<double, double> table;
        for (const auto& [x, value] : rows) table[x] = value;
        return ScoreFunction::tabulated(std::move(table));
    }
    throw Error("cli_io", "BadScoreSpec", spec);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

EstimatorChoice parse_estimator(const std::string& name) {
    if (name == "lynden-bell") return EstimatorChoice::lynden_bell;
    if (name == "modified") return EstimatorChoice::modified;
    if (name == "both") return EstimatorChoice::both;
    throw Error("cli_io", "BadEstimator", name + " (expected lynden-bell, modified, or both)");
}

std::string render_study_csv(const StudyReport& report) {
    std::string s;
    if (report.study == "mse") {
        s = "n,estimator,reps,mse,bias,variance,mc_se,seed\n";
        for (const StudyRow& r : report.rows) {
            s += std::to_string(r.n) + "," + r.estimator + "," + std::to_string(r.replications) +
                 "," + format_double(r.mse) + "," + format_double(r.bias) + "," +
                 format_double(r.variance) + "," + format_double(r.mc_se) + "," +
                 std::to_string(r.seed) + "\n";
        }
    } else if (report.study == "coverage") {
        s = "n,estimator,reps,level,coverage,mc_se,seed\n";
        for (const StudyRow& r : report.rows) {
            s += std::to_string(r.n) + "," + r.estimator + "," + std::to_string(r.replications) +
                 "," + format_double(r.level) + "," + format_double(r.coverage) + "," +
                 format_double(r.mc_se) + "," + std::to_string(r.seed) + "\n";
        }
    } else if (report.study == "remainder") {
        s = "n,reps,median_abs_remainder,q90_abs_remainder,seed\n";
        for (const StudyRow& r : report.rows) {
            s += std::to_string(r.n) + "," + std::to_string(r.replications) + "," +
                 format_double(r.median_abs_remainder) + "," +
                 format_double(r.q90_abs_remainder) + "," + std::to_string(r.seed) + "\n";
        }
    } else {
        throw Error("cli_io", "UnknownStudy", report.study);
    }
    return s;
}

std::string run(const RunConfig& config) {
    std::string text;
    if (config.subcommand == "estimate") {
        text = run_estimate(config, load_sample(config), parse_estimator(config.estimator));
    } else if (config.subcommand == "integrate") {
        text = run_integrate(config, load_sample(config), parse_estimator(config.estimator));
    } else if (config.subcommand == "holes") {
        text = run_holes(config, load_sample(config));
    } else if (config.subcommand == "simulate") {
        if (config.model_spec.empty()) {
            throw Error("cli_io", "MissingArgument", "simulate needs --model");
        }
        if (config.n_list.empty()) {
            throw Error("cli_io", "MissingArgument", "simulate needs --n");
        }
        const StudyReport report =
            mse_study(make_model(config.model_spec), parse_phi(config.phi_spec), config.n_list,
                      config.reps, config.seed, config.threads);
        text = render_study_csv(report);
    } else if (config.subcommand == "coverage") {
        if (config.model_spec.empty()) {
            throw Error("cli_io", "MissingArgument", "coverage needs --model");
        }
        if (config.n_list.size() != 1) {
            throw Error("cli_io", "MissingArgument", "coverage needs exactly one --n");
        }
        const StudyReport report =
            coverage_study(make_model(config.model_spec), parse_phi(config.phi_spec),
                           config.n_list.front(), config.reps, config.level, config.seed,
                           config.threads);
        text = render_study_csv(report);
    } else if (config.subcommand == "represent") {
        text = run_represent(config);
    } else {
        throw Error("cli_io", "UnknownSubcommand", config.subcommand);
    }
    write_output(config.output_path, text);
    return text;
}

}  // namespace truncstat
