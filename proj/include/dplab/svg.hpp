#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dplab {

/// Minimal self-contained SVG line plots; no external renderer involved.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void add_series(const std::string& name, const std::vector<double>& x,
                    const std::vector<double>& y) {
        if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: series size mismatch");
        series_.push_back({name, x, y, false});
    }

    void add_threshold(const std::string& name, double y) { thresholds_.push_back({name, y}); }

    void write(const std::string& path) const {
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin;
        for (const auto& s : series_) {
            for (double v : s.x) {
                xmin = std::min(xmin, v);
                xmax = std::max(xmax, v);
            }
            for (double v : s.y) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
        for (const auto& t : thresholds_) {
            ymin = std::min(ymin, t.second);
            ymax = std::max(ymax, t.second);
        }
        if (!(xmax > xmin)) {
            xmin -= 1.0;
            xmax += 1.0;
        }
        if (!(ymax > ymin)) {
            ymin -= 1.0;
            ymax += 1.0;
        }
        const double ypad = 0.05 * (ymax - ymin);
        ymin -= ypad;
        ymax += ypad;

        const int W = 760, H = 480, ml = 80, mr = 20, mt = 40, mb = 55;
        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
        auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
            << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
        out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
        out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
            << title_ << "</text>\n";
        out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
            << "\" height=\"" << H - mt - mb
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

        for (int i = 0; i <= 5; ++i) {
            const double xv = xmin + (xmax - xmin) * i / 5.0;
            const double yv = ymin + (ymax - ymin) * i / 5.0;
            out << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv)
                << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 18
                << "\" text-anchor=\"middle\" font-size=\"11\">" << short_num(xv) << "</text>\n";
            out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
                << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
            out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
                << "\" text-anchor=\"end\" font-size=\"11\">" << short_num(yv) << "</text>\n";
        }
        out << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
            << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel_ << "</text>\n";
        out << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
            << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
            << (mt + H - mb) / 2 << ")\">" << ylabel_ << "</text>\n";

        static const char* colors[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                                       "#d68910", "#16a085", "#7f8c8d", "#2c3e50"};
        int ci = 0;
        int legend_y = mt + 16;
        for (const auto& s : series_) {
            const char* color = colors[ci % 8];
            std::ostringstream pts;
            for (size_t i = 0; i < s.x.size(); ++i)
                pts << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.4\" points=\"" << pts.str() << "\"/>\n";
            out << "<text x=\"" << ml + 10 << "\" y=\"" << legend_y << "\" font-size=\"11\" fill=\""
                << color << "\">" << s.name << "</text>\n";
            legend_y += 14;
            ++ci;
        }
        for (const auto& t : thresholds_) {
            out << "<line x1=\"" << ml << "\" y1=\"" << py(t.second) << "\" x2=\"" << W - mr
                << "\" y2=\"" << py(t.second)
                << "\" stroke=\"#555\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
            out << "<text x=\"" << W - mr - 4 << "\" y=\"" << py(t.second) - 4
                << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#555\">" << t.first
                << "</text>\n";
        }
        out << "</svg>\n";

        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + path);
        file << out.str();
    }

private:
    struct Series {
        std::string name;
        std::vector<double> x, y;
        bool dashed;
    };

    static std::string short_num(double v) {
        char buf[32];
        if (v == 0.0)
            std::snprintf(buf, sizeof(buf), "0");
        else if (std::fabs(v) >= 0.01 && std::fabs(v) < 10000.0)
            std::snprintf(buf, sizeof(buf), "%.4g", v);
        else
            std::snprintf(buf, sizeof(buf), "%.2e", v);
        return buf;
    }

    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
    std::vector<std::pair<std::string, double>> thresholds_;
};

/// Waterfall of snapshots: each curve is offset vertically by its time.
inline void write_waterfall_svg(const std::string& path, const std::vector<double>& x,
                                const std::vector<std::vector<double>>& curves,
                                const std::vector<double>& times, double offset_scale,
                                const std::string& title) {
    SvgPlot plot(title, "x", "u + offset(t)");
    const size_t stride = curves.size() > 24 ? curves.size() / 24 : 1;
    for (size_t i = 0; i < curves.size(); i += stride) {
        std::vector<double> shifted = curves[i];
        for (double& v : shifted) v += offset_scale * times[i];
        std::ostringstream name;
        if (i == 0 || i + stride >= curves.size()) {
            name.setf(std::ios::fixed);
            name.precision(2);
            name << "t = " << times[i];
        }
        plot.add_series(name.str(), x, shifted);
    }
    plot.write(path);
}

}  // namespace dplab
