// Minimal static SVG line/point plots; no display dependency.
#ifndef LOGGAS_TOOLS_SVG_HPP
#define LOGGAS_TOOLS_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace svgplot {

struct Series {
    std::vector<double> xs, ys;
    std::string color;
    std::string label;
    bool points = false;  // draw markers instead of a polyline
};

class Plot {
public:
    explicit Plot(std::string title) : title_(std::move(title)) {}

    void add_line(std::vector<double> xs, std::vector<double> ys,
                  std::string color, std::string label) {
        series_.push_back({std::move(xs), std::move(ys), std::move(color),
                           std::move(label), false});
    }
    void add_points(std::vector<double> xs, std::vector<double> ys,
                    std::string color, std::string label) {
        series_.push_back({std::move(xs), std::move(ys), std::move(color),
                           std::move(label), true});
    }

    bool write(const std::string& path) const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series_) {
            for (size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
                xmin = std::min(xmin, s.xs[i]);
                xmax = std::max(xmax, s.xs[i]);
                ymin = std::min(ymin, s.ys[i]);
                ymax = std::max(ymax, s.ys[i]);
            }
        }
        if (xmin > xmax) return false;
        if (xmax == xmin) xmax = xmin + 1.0;
        if (ymax == ymin) ymax = ymin + 1.0;
        double ypad = 0.05 * (ymax - ymin);
        ymin -= ypad;
        ymax += ypad;

        const double w = 720, h = 480, ml = 70, mr = 20, mt = 40, mb = 50;
        auto px = [&](double x) {
            return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
        };
        auto py = [&](double y) {
            return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);
        };
        char buf[256];
        std::ofstream os(path);
        if (!os) return false;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" "
              "height=\"480\" viewBox=\"0 0 720 480\">\n"
              "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"24\" font-size=\"16\" "
                      "text-anchor=\"middle\">%s</text>\n",
                      (ml + w - mr) / 2, title_.c_str());
        os << buf;
        // axes box and ticks
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" "
                      "height=\"%.1f\" fill=\"none\" stroke=\"black\"/>\n",
                      ml, mt, w - ml - mr, h - mt - mb);
        os << buf;
        for (int k = 0; k <= 5; ++k) {
            double x = xmin + (xmax - xmin) * k / 5.0;
            double y = ymin + (ymax - ymin) * k / 5.0;
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" "
                          "y2=\"%.1f\" stroke=\"black\"/>\n",
                          px(x), h - mb, px(x), h - mb + 5);
            os << buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                          "text-anchor=\"middle\">%.4g</text>\n",
                          px(x), h - mb + 18, x);
            os << buf;
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" "
                          "y2=\"%.1f\" stroke=\"black\"/>\n",
                          ml - 5, py(y), ml, py(y));
            os << buf;
            std::snprintf(buf, sizeof buf,
                          "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                          "text-anchor=\"end\">%.4g</text>\n",
                          ml - 8, py(y) + 4, y);
            os << buf;
        }
        double ly = mt + 16;
        for (const auto& s : series_) {
            if (s.points) {
                for (size_t i = 0; i < s.xs.size(); ++i) {
                    if (!std::isfinite(s.ys[i])) continue;
                    std::snprintf(buf, sizeof buf,
                                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3.5\" "
                                  "fill=\"%s\"/>\n",
                                  px(s.xs[i]), py(s.ys[i]), s.color.c_str());
                    os << buf;
                }
            } else {
                os << "<polyline fill=\"none\" stroke=\"" << s.color
                   << "\" stroke-width=\"1.5\" points=\"";
                for (size_t i = 0; i < s.xs.size(); ++i) {
                    if (!std::isfinite(s.ys[i])) continue;
                    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.xs[i]),
                                  py(s.ys[i]));
                    os << buf;
                }
                os << "\"/>\n";
            }
            if (!s.label.empty()) {
                std::snprintf(buf, sizeof buf,
                              "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                              "fill=\"%s\">%s</text>\n",
                              w - mr - 200, ly, s.color.c_str(),
                              s.label.c_str());
                os << buf;
                ly += 16;
            }
        }
        os << "</svg>\n";
        return static_cast<bool>(os);
    }

private:
    std::string title_;
    std::vector<Series> series_;
};

}  // namespace svgplot

#endif
