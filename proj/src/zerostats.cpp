#include "zetagap/zerostats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "zetagap/errors.hpp"

namespace zetagap {

namespace {

std::string trimmed(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();  // CRLF input
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

ZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    ZeroTable table;
    table.source = path;
    std::string line;
    std::size_t line_no = 0;
    double prev = -1.0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trimmed(line);
        if (s.empty() || s[0] == '#') continue;
        double value = 0.0;
        const auto* last = s.data() + s.size();
        const auto [ptr, ec] = std::from_chars(s.data(), last, value);
        if (ec != std::errc() || ptr != last)
            throw ParseError(line_no, "not a decimal ordinate: \"" + s + "\"");
        if (!(value > 0.0)) throw ParseError(line_no, "ordinate must be positive: \"" + s + "\"");
        if (prev >= 0.0 && value < prev - 1e-9)
            throw OrderError("ordinate on line " + std::to_string(line_no) +
                             " descends by more than 1e-9 (" + std::to_string(value) + " after " +
                             std::to_string(prev) + ")");
        prev = value;
        table.ordinates.push_back(value);
    }
    if (table.ordinates.empty()) throw EmptyInput("no ordinates in " + path);

    std::sort(table.ordinates.begin(), table.ordinates.end());
    // drop duplicates within 1e-12; table becomes strictly increasing
    auto out = table.ordinates.begin();
    for (auto it = table.ordinates.begin() + 1; it != table.ordinates.end(); ++it)
        if (*it - *out > 1e-12) *++out = *it;
    table.ordinates.erase(out + 1, table.ordinates.end());

    if (table.ordinates.front() <= 14.0)
        throw ParseError("first ordinate " + std::to_string(table.ordinates.front()) +
                         " is below the first zeta zero (~14.13); input is not a zero table");
    return table;
}

std::vector<double> normalized_gaps(const ZeroTable& table) {
    if (table.count() < 2) throw InsufficientData("need at least 2 ordinates");
    std::vector<double> deltas;
    deltas.reserve(table.count() - 1);
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i + 1 < table.ordinates.size(); ++i) {
        const double g = table.ordinates[i];
        deltas.push_back((table.ordinates[i + 1] - g) * std::log(g) / two_pi);
    }
    return deltas;
}

double counting_residual(const ZeroTable& table, double t) {
    if (table.ordinates.empty()) throw InsufficientData("empty table");
    if (!(t > 0.0) || t > table.ordinates.back())
        throw OutOfRange("T must be in (0, last ordinate]");
    const auto upper = std::upper_bound(table.ordinates.begin(), table.ordinates.end(), t);
    const auto n = static_cast<double>(upper - table.ordinates.begin());
    const double two_pi = 2.0 * std::numbers::pi;
    const double main = (t / two_pi) * std::log(t / two_pi) - t / two_pi;
    return n - main;
}

GapStats max_gap_report(const ZeroTable& table) {
    const std::vector<double> deltas = normalized_gaps(table);
    GapStats stats;
    stats.count = table.count();
    std::size_t arg = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        sum += deltas[i];
        if (deltas[i] > deltas[arg]) arg = i;
    }
    stats.max_delta = deltas[arg];
    stats.argmax_pair = {table.ordinates[arg], table.ordinates[arg + 1]};
    stats.mean_delta = sum / static_cast<double>(deltas.size());

    const auto bins =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(stats.max_delta) * 10.0 + 0.5));
    stats.histogram.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        stats.histogram[b].lo = static_cast<double>(b) * 0.1;
        stats.histogram[b].hi = static_cast<double>(b + 1) * 0.1;
    }
    for (double d : deltas) {
        auto b = d > 0.0 ? static_cast<std::size_t>(d / 0.1) : 0;
        if (b >= bins) b = bins - 1;  // the max lands on the top edge
        ++stats.histogram[b].n;
    }
    return stats;
}

std::string gap_stats_json(const GapStats& stats) {
    nlohmann::ordered_json j;
    j["max_delta"] = stats.max_delta;
    j["argmax_gamma"] = stats.argmax_pair.first;
    j["argmax_gamma_prime"] = stats.argmax_pair.second;
    j["mean_delta"] = stats.mean_delta;
    j["count"] = stats.count;
    nlohmann::ordered_json hist = nlohmann::ordered_json::array();
    for (const auto& bin : stats.histogram) {
        nlohmann::ordered_json b;
        b["lo"] = bin.lo;
        b["hi"] = bin.hi;
        b["n"] = bin.n;
        hist.push_back(std::move(b));
    }
    j["histogram"] = std::move(hist);
    return j.dump(2);
}

void write_histogram_csv(std::ostream& out, const GapStats& stats) {
    out << "lo,hi,n\n";
    char buf[64];
    for (const auto& bin : stats.histogram) {
        auto fmt = [&buf](double v) {
            const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
            return std::string(buf, p);
        };
        out << fmt(bin.lo) << ',' << fmt(bin.hi) << ',' << bin.n << '\n';
    }
}

}  // namespace zetagap
