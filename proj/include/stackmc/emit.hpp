#pragma once

#include "stackmc/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace stackmc {

// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

// CSV with header `n,estimator,mse,stderr,trials`.
std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);

std::string to_json_text(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_json_rows(const std::string& text);

// Log-log chart of mse against n with one polyline per estimator and
// one-standard-error bars.
std::string to_svg(const std::vector<ResultRow>& rows, const std::string& title);

// Writes <dir>/<stem>.<format> for every requested format ("csv", "json",
// "svg") and returns the paths written. Throws std::runtime_error when a file
// cannot be written and std::invalid_argument for empty rows.
std::vector<std::filesystem::path> emit(const std::vector<ResultRow>& rows, const std::vector<std::string>& formats,
                                        const std::filesystem::path& dir, const std::string& stem);

}  // namespace stackmc
