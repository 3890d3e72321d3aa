#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fractree {

/// All library failures carry a short machine-readable kind plus a human
/// message. The CLI maps kinds onto its error JSON and exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

namespace errkind {
inline constexpr const char* io = "io";
inline constexpr const char* parse = "parse";
inline constexpr const char* brackets = "brackets";
inline constexpr const char* contractivity = "contractivity";
inline constexpr const char* budget = "budget";
inline constexpr const char* nonfinite = "nonfinite";
inline constexpr const char* speed = "speed";
inline constexpr const char* unsupported_family = "unsupported_family";
inline constexpr const char* irregular_curve = "irregular_curve";
inline constexpr const char* no_solution = "no_solution";
inline constexpr const char* degenerate_edge = "degenerate_edge";
inline constexpr const char* not_isomorphic = "not_isomorphic";
inline constexpr const char* empty_set = "empty_set";
inline constexpr const char* depth = "depth";
inline constexpr const char* config = "config";
}  // namespace errkind

}  // namespace fractree
