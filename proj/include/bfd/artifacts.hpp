#pragma once

// CSV and SVG emission for convergence tables.  Output is byte-deterministic
// for identical inputs: fixed formats, fixed ordering.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace bfd {

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

inline std::string csv_string(const std::vector<ConvergenceTable>& tables) {
    std::ostringstream os;
    os << "case,c,N,h,err_l2,err_linf,err_post,rate\n";
    for (const auto& t : tables)
        for (const auto& r : t.rows)
            os << case_name(t.kind) << ',' << detail::fmt(t.c) << ',' << r.n << ','
               << detail::fmt(r.h) << ',' << detail::fmt(r.err_l2) << ','
               << detail::fmt(r.err_linf) << ',' << detail::fmt(r.err_post_l2) << ','
               << detail::fmt(t.fitted_rate) << '\n';
    return os.str();
}

/// Minimal log-log polyline chart: one series per table (same case assumed).
inline std::string svg_string(const std::vector<ConvergenceTable>& tables) {
    const int width = 640, height = 480, margin = 60;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    if (tables.empty() || tables.front().rows.empty()) {
        os << "</svg>\n";
        return os.str();
    }
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& t : tables)
        for (const auto& r : t.rows) {
            double lx = std::log10(r.h), ly = std::log10(r.err_l2);
            xmin = std::min(xmin, lx);
            xmax = std::max(xmax, lx);
            ymin = std::min(ymin, ly);
            ymax = std::max(ymax, ly);
        }
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;
    auto px = [&](double lx) {
        return margin + (lx - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    auto py = [&](double ly) {
        return height - margin - (ly - ymin) / (ymax - ymin) * (height - 2 * margin);
    };
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 15
       << "\" text-anchor=\"middle\">log10 h</text>\n";
    os << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << height / 2 << ")\">log10 error (L2)</text>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\">"
       << case_name(tables.front().kind) << "</text>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    int ci = 0;
    for (const auto& t : tables) {
        const char* col = colors[ci % 5];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : t.rows)
            os << detail::fmt(px(std::log10(r.h))) << ',' << detail::fmt(py(std::log10(r.err_l2)))
               << ' ';
        os << "\"/>\n";
        for (const auto& r : t.rows)
            os << "<circle cx=\"" << detail::fmt(px(std::log10(r.h))) << "\" cy=\""
               << detail::fmt(py(std::log10(r.err_l2))) << "\" r=\"3\" fill=\"" << col << "\"/>\n";
        os << "<text x=\"" << width - margin + 5 << "\" y=\"" << margin + 16 * ci + 12
           << "\" fill=\"" << col << "\" font-size=\"11\">c=" << detail::fmt(t.c)
           << " rate " << detail::fmt(t.fitted_rate) << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

/// One CSV for all tables plus one SVG per case, under `dir`.
inline std::vector<std::string> emit_artifacts(const std::vector<ConvergenceTable>& tables,
                                               const std::string& dir) {
    std::vector<std::string> written;
    std::string csv = dir + "/convergence.csv";
    write_file(csv, csv_string(tables));
    written.push_back(csv);
    // group by case
    std::vector<Case> seen;
    for (const auto& t : tables) {
        bool dup = false;
        for (auto k : seen) dup = dup || k == t.kind;
        if (dup) continue;
        seen.push_back(t.kind);
        std::vector<ConvergenceTable> group;
        for (const auto& u : tables)
            if (u.kind == t.kind) group.push_back(u);
        std::string svg = dir + "/" + case_name(t.kind) + ".svg";
        write_file(svg, svg_string(group));
        written.push_back(svg);
    }
    return written;
}

} // namespace bfd
