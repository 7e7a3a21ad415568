#pragma once

// Sweep output: CSV emission (the single source of truth) and a standalone
// gnuplot script that re-reads the CSV, so re-plotting never re-simulates.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qsw/errors.hpp"
#include "qsw/experiments.hpp"

namespace qsw {

// Shortest decimal string that round-trips the value; infinity prints "inf".
inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Header `epsilon,n,beta,postselect,p_post,concurrence,engine`; one row per
// record in sweep order; absent concurrence becomes an empty field; LF line
// endings.
inline void emit_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
    out << "epsilon,n,beta,postselect,p_post,concurrence,engine\n";
    for (const auto& r : records) {
        out << format_double(r.epsilon) << ',' << r.n << ',' << format_double(r.beta) << ','
            << r.postselect << ',' << format_double(r.p_post) << ',';
        if (r.concurrence)
            out << format_double(*r.concurrence);
        out << ',' << r.engine << '\n';
    }
    if (!out)
        throw IoError("emit_csv: stream write failed");
}

struct PlotOptions {
    std::string csv_path = "sweep.csv";   // relative path the script will read
    std::string image_path = "sweep.png";
    std::vector<std::string> overrides;   // echoed as provenance comments
};

// One panel per (beta, outcome) pair, one curve per collision count, the
// definite-order baseline in red in every panel. Rows are selected by exact
// string match on the CSV fields ("inf" betas included); `smooth unique`
// orders each curve by epsilon and skips rows with an empty concurrence.
inline void emit_plot_script(const std::vector<SweepRecord>& records, std::ostream& out,
                             const PlotOptions& opt = {}) {
    if (records.empty())
        throw ValidationError("emit_plot_script: no records");

    std::vector<std::pair<std::string, std::string>> panels; // (beta text, outcome)
    std::vector<int> counts;
    bool have_definite = false;
    std::string engine_filter;
    for (const auto& r : records) {
        if (r.postselect == "definite") {
            have_definite = true;
            continue;
        }
        if (engine_filter.empty()) engine_filter = r.engine;
        const std::pair<std::string, std::string> key{format_double(r.beta), r.postselect};
        bool seen = false;
        for (const auto& p : panels)
            if (p == key) { seen = true; break; }
        if (!seen) panels.push_back(key);
        bool seen_n = false;
        for (int n : counts)
            if (n == r.n) { seen_n = true; break; }
        if (!seen_n) counts.push_back(r.n);
    }
    const bool definite_only = panels.empty();
    const std::size_t panel_count = definite_only ? 1 : panels.size();
    const std::size_t cols = panel_count > 1 ? 2 : 1;
    const std::size_t rows = (panel_count + cols - 1) / cols;

    out << "# concurrence vs monitoring strength, one panel per (beta, outcome)\n";
    out << "# data: " << opt.csv_path << "\n";
    for (const auto& o : opt.overrides)
        out << "# override: " << o << "\n";
    out << "set datafile separator \",\"\n";
    out << "set terminal pngcairo size " << 600 * cols << "," << 450 * rows << "\n";
    out << "set output \"" << opt.image_path << "\"\n";
    out << "set multiplot layout " << rows << "," << cols << "\n";
    out << "set xrange [0:1]\nset yrange [0:1]\n";
    out << "set xlabel \"epsilon\"\nset ylabel \"concurrence\"\nset key outside right\n";

    const std::string src = "\"" + opt.csv_path + "\"";
    const std::string definite_curve =
        src + " using (strcol(4) eq \"definite\" ? $1 : NaN):6 smooth unique with lines lc rgb \"red\" lw 2 title \"definite\"";
    if (definite_only) {
        out << "set title \"definite order\"\n";
        out << "plot \\\n  " << definite_curve << "\n";
    }
    for (const auto& panel : panels) {
        out << "set title \"beta=" << panel.first << ", outcome=" << panel.second << "\"\n";
        out << "plot \\\n";
        bool first = true;
        if (have_definite) {
            out << "  " << definite_curve;
            first = false;
        }
        for (int n : counts) {
            if (!first) out << ", \\\n";
            out << "  " << src << " using (strcol(4) eq \"" << panel.second
                << "\" && $2==" << n << " && strcol(3) eq \"" << panel.first
                << "\" && strcol(7) eq \"" << engine_filter
                << "\" ? $1 : NaN):6 smooth unique with lines title \"n=" << n << "\"";
            first = false;
        }
        out << "\n";
    }
    out << "unset multiplot\n";
    if (!out)
        throw IoError("emit_plot_script: stream write failed");
}

} // namespace qsw
