#include "table.hpp"

#include "omec/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace omec::cli {

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != cols_.size()) throw std::logic_error("row width does not match the schema");
    rows_.push_back(std::move(row));
}

static std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string ResultTable::to_csv() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta_) os << "# " << k << ": " << v << "\r\n";
    os << "# units:";
    for (const auto& c : cols_) os << ' ' << c.name << '=' << (c.unit.empty() ? "1" : c.unit);
    os << "\r\n";
    for (size_t i = 0; i < cols_.size(); ++i) os << (i ? "," : "") << csv_field(cols_[i].name);
    os << "\r\n";
    for (const auto& r : rows_) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
        os << "\r\n";
    }
    return os.str();
}

std::string ResultTable::to_svg(const std::string& title, const std::vector<int>& ys, bool logx,
                                bool logy) const {
    const double W = 640, H = 420, L = 70, R = 160, T = 40, B = 50;
    auto tx = [&](double v) { return logx ? std::log10(v) : v; };
    auto ty = [&](double v) { return logy ? std::log10(v) : v; };
    auto ok = [](double v, bool lg) { return std::isfinite(v) && (!lg || v > 0); };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& r : rows_) {
        if (!ok(r[0], logx)) continue;
        for (int c : ys) {
            if (!ok(r[c], logy)) continue;
            x0 = std::min(x0, tx(r[0]));
            x1 = std::max(x1, tx(r[0]));
            y0 = std::min(y0, ty(r[c]));
            y1 = std::max(y1, ty(r[c]));
        }
    }
    if (!(x1 >= x0)) x0 = 0, x1 = 1;
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    static const char* colors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << L << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    char buf[64];
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4, yv = y0 + (y1 - y0) * k / 4;
        const double gx = L + (W - L - R) * k / 4, gy = H - B - (H - T - B) * k / 4;
        std::snprintf(buf, sizeof buf, "%.3g", logx ? std::pow(10, xv) : xv);
        os << "<text x=\"" << gx << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << buf << "</text>\n";
        std::snprintf(buf, sizeof buf, "%.3g", logy ? std::pow(10, yv) : yv);
        os << "<text x=\"" << L - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
       << cols_[0].name << "</text>\n";
    for (size_t s = 0; s < ys.size(); ++s) {
        const int c = ys[s];
        const char* col = colors[s % 9];
        std::ostringstream d;
        bool pen = false;
        for (const auto& r : rows_) {
            if (!ok(r[0], logx) || !ok(r[c], logy)) {
                pen = false;
                continue;
            }
            std::snprintf(buf, sizeof buf, "%s%.2f %.2f ", pen ? "L" : "M", px(r[0]), py(r[c]));
            d << buf;
            pen = true;
        }
        os << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"/>\n";
        const double ly = T + 14 + 18 * s;
        os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << W - R + 30 << "\" y2=\""
           << ly - 4 << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 36 << "\" y=\"" << ly << "\">" << cols_[c].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidParameters("cannot open output file: " + path);
    f << text;
    if (!f) throw InvalidParameters("write failed: " + path);
}

}  // namespace omec::cli
