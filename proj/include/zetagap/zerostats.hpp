#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace zetagap {

// Sorted table of zeta-zero ordinates (imaginary parts).
struct ZeroTable {
    std::vector<double> ordinates;
    std::string source;

    std::size_t count() const { return ordinates.size(); }
};

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;
};

struct GapStats {
    double max_delta = 0.0;
    std::pair<double, double> argmax_pair{0.0, 0.0};  // (gamma, gamma')
    double mean_delta = 0.0;
    std::vector<HistogramBin> histogram;  // width 0.1 over [0, ceil(max_delta))
    std::size_t count = 0;                // ordinates in the table
};

// Plaintext, one decimal ordinate per line, '#' comments, blank lines
// ignored, LF or CRLF. Validates positivity and near-sortedness (descents
// beyond 1e-9 raise OrderError), sorts, deduplicates at 1e-12, and requires
// the first ordinate to exceed 14 (anything below signals a parse error).
// Throws ParseError / OrderError / EmptyInput.
ZeroTable load_zeros(const std::string& path);

// delta_i = (gamma_{i+1} - gamma_i) * log(gamma_i) / (2 pi). Needs >= 2 rows.
std::vector<double> normalized_gaps(const ZeroTable& table);

// N(T) counted from the table minus the smooth main term
// (T/2pi) log(T/2pi) - T/2pi. Requires 0 < T <= last ordinate.
double counting_residual(const ZeroTable& table, double t);

GapStats max_gap_report(const ZeroTable& table);

// JSON with fields exactly: max_delta, argmax_gamma, argmax_gamma_prime,
// mean_delta, count, histogram [{lo, hi, n}].
std::string gap_stats_json(const GapStats& stats);

void write_histogram_csv(std::ostream& out, const GapStats& stats);

}  // namespace zetagap
