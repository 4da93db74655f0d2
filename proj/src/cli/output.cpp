#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "radpauli/cli.hpp"

namespace radpauli::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<CsvSection>& sections) {
    bool first = true;
    for (const auto& s : sections) {
        if (!first) os << '\n';
        first = false;
        for (std::size_t i = 0; i < s.header.size(); ++i) os << (i ? "," : "") << s.header[i];
        os << '\n';
        for (const auto& row : s.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
    }
}

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

std::string render_svg(const SvgPlot& plot) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!(s.x[i] > 0.0 && s.y[i] > 0.0) || !std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xlo = std::min(xlo, std::log10(s.x[i]));
            xhi = std::max(xhi, std::log10(s.x[i]));
            ylo = std::min(ylo, std::log10(s.y[i]));
            yhi = std::max(yhi, std::log10(s.y[i]));
        }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    xlo = std::floor(xlo), xhi = std::ceil(xhi), ylo = std::floor(ylo), yhi = std::ceil(yhi);
    if (xhi <= xlo) xhi = xlo + 1;
    if (yhi <= ylo) yhi = ylo + 1;
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto X = [&](double lx) { return kLeft + (lx - xlo) / (xhi - xlo) * pw; };
    auto Y = [&](double ly) { return kTop + (yhi - ly) / (yhi - ylo) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const int xstep = std::max(1, static_cast<int>(std::ceil((xhi - xlo) / 10)));
    for (int d = static_cast<int>(xlo); d <= static_cast<int>(xhi); d += xstep) {
        const double x = X(d);
        os << "<line x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x) << "\" y2=\"" << kTop + ph
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">1e" << d
           << "</text>\n";
    }
    const int ystep = std::max(1, static_cast<int>(std::ceil((yhi - ylo) / 10)));
    for (int d = static_cast<int>(ylo); d <= static_cast<int>(yhi); d += ystep) {
        const double y = Y(d);
        os << "<line x1=\"" << kLeft << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(y)
           << "\" stroke=\"#ddd\"/>\n";
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">1e" << d
           << "</text>\n";
    }
    os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 18) << "\" text-anchor=\"middle\">"
       << escape(plot.xlabel) << "</text>\n";
    os << "<text transform=\"translate(20," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(plot.ylabel) << "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        const char* colour = kColours[k % std::size(kColours)];
        std::ostringstream pts;
        std::vector<std::pair<double, double>> xy;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (s.x[i] > 0.0 && s.y[i] > 0.0 && std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
                xy.emplace_back(X(std::log10(s.x[i])), Y(std::log10(s.y[i])));
        for (const auto& [x, y] : xy) pts << num(x) << "," << num(y) << " ";
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
           << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
        if (s.markers)
            for (const auto& [x, y] : xy)
                os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"2.5\" fill=\"" << colour
                   << "\"/>\n";
        const double ly = kTop + 14 + 16 * k;
        os << "<line x1=\"" << num(kLeft + pw + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
           << num(kLeft + pw + 30) << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << colour << "\""
           << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        os << "<text x=\"" << num(kLeft + pw + 34) << "\" y=\"" << num(ly) << "\">" << escape(s.name) << "</text>\n";
    }
    for (std::size_t i = 0; i < plot.notes.size(); ++i)
        os << "<text x=\"" << num(kLeft + 8) << "\" y=\"" << num(kTop + 16 + 15 * i) << "\">" << escape(plot.notes[i])
           << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace radpauli::cli
