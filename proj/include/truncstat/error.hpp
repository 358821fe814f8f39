#ifndef TRUNCSTAT_ERROR_HPP
#define TRUNCSTAT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace truncstat {

// Domain error carrying a module-qualified code, e.g. "sample_model.TruncationViolated".
// The CLI maps these to single-line machine-parsable messages and a nonzero exit.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& detail)
        : std::runtime_error(module + "." + code + ": " + detail),
          module_(std::move(module)),
          code_(std::move(code)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& code() const noexcept { return code_; }

private:
    std::string module_;
    std::string code_;
};

inline std::string join_indices(const std::vector<std::size_t>& rows) {
    std::string s;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(rows[i]);
    }
    return s;
}

}  // namespace truncstat

#endif
