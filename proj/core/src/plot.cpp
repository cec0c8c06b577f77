#include "oscot/plot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace oscot {

namespace {

struct Polyline {
  std::vector<std::pair<double, double>> points;
  int color = 0;
};

struct Figure {
  std::vector<Polyline> lines;
  std::vector<std::pair<double, double>> dots;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

  void grow(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

// Per-segment sample positions: endpoints plus uniform fill.
std::vector<Rat> segment_samples(const Interval& iv, const Rat& step) {
  std::vector<Rat> xs{iv.lo()};
  if (!iv.is_point() && step > 0) {
    Rat x = iv.lo() + step;
    while (x < iv.hi()) {
      xs.push_back(x);
      x += step;
    }
  }
  if (!iv.is_point()) xs.push_back(iv.hi());
  return xs;
}

Rat fill_step(const Rat& lo, const Rat& hi) { return (hi - lo) / 64; }

void map_rows(const PiecewiseMap& map, std::ostream& out) {
  out << "x,T\n";
  Rat lo = map.pieces().front().interval.lo();
  Rat hi = map.pieces().back().interval.hi();
  Rat step = fill_step(lo, hi);
  for (const auto& piece : map.pieces()) {
    if (std::holds_alternative<AtomicTable>(piece.body)) {
      for (const auto& e : std::get<AtomicTable>(piece.body).entries)
        out << to_string(e.first) << ',' << to_string(e.second) << '\n';
    } else {
      for (const auto& seg : std::get<std::vector<AffineSegment>>(piece.body))
        for (const auto& x : segment_samples(seg.interval, step))
          out << to_string(x) << ',' << to_string(seg.eval(x)) << '\n';
    }
  }
}

void strip_rows(const Strip& strip, std::ostream& out) {
  out << "x,lower,upper\n";
  Rat step = fill_step(strip.domain().inf(), strip.domain().sup());
  for (const auto& frag : zip_pieces(strip.lower(), strip.upper()))
    for (const auto& x : segment_samples(frag.interval, step))
      out << to_string(x) << ',' << to_string(frag.va) << ',' << to_string(frag.vb) << '\n';
}

Figure map_figure(const PiecewiseMap& map) {
  Figure fig;
  bool first = true;
  for (const auto& piece : map.pieces()) {
    if (std::holds_alternative<AtomicTable>(piece.body)) {
      for (const auto& e : std::get<AtomicTable>(piece.body).entries) {
        double x = to_double(e.first), y = to_double(e.second);
        fig.dots.emplace_back(x, y);
        if (first) {
          fig.xmin = fig.xmax = x;
          fig.ymin = fig.ymax = y;
          first = false;
        }
        fig.grow(x, y);
      }
      continue;
    }
    for (const auto& seg : std::get<std::vector<AffineSegment>>(piece.body)) {
      double x0 = to_double(seg.interval.lo()), x1 = to_double(seg.interval.hi());
      double y0 = to_double(seg.eval(seg.interval.lo())), y1 = to_double(seg.eval(seg.interval.hi()));
      if (first) {
        fig.xmin = fig.xmax = x0;
        fig.ymin = fig.ymax = y0;
        first = false;
      }
      fig.grow(x0, y0);
      fig.grow(x1, y1);
      // new polyline unless this segment continues the previous one
      if (!fig.lines.empty() && fig.lines.back().points.back().first == x0 &&
          fig.lines.back().points.back().second == y0) {
        fig.lines.back().points.emplace_back(x1, y1);
      } else {
        fig.lines.push_back(Polyline{{{x0, y0}, {x1, y1}}});
      }
    }
  }
  return fig;
}

void step_polylines(const StepFn& f, Figure& fig, bool& first, int color) {
  for (const auto& p : f.pieces()) {
    double x0 = to_double(p.interval.lo()), x1 = to_double(p.interval.hi());
    double v = to_double(p.value);
    if (first) {
      fig.xmin = fig.xmax = x0;
      fig.ymin = fig.ymax = v;
      first = false;
    }
    fig.grow(x0, v);
    fig.grow(x1, v);
    fig.lines.push_back(Polyline{{{x0, v}, {x1, v}}, color});
  }
}

void write_svg(const Figure& fig, const std::string& path, const PlotAnnotations& notes) {
  const double W = 640, H = 480, margin = 48;
  double spanx = fig.xmax - fig.xmin, spany = fig.ymax - fig.ymin;
  if (spanx <= 0) spanx = 1;
  if (spany <= 0) spany = 1;
  auto px = [&](double x) { return margin + (x - fig.xmin) / spanx * (W - 2 * margin); };
  auto py = [&](double y) { return H - margin - (y - fig.ymin) / spany * (H - 2 * margin); };

  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << margin << "\" y1=\"" << H - margin << "\" x2=\"" << W - margin
      << "\" y2=\"" << H - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << H - margin << "\" x2=\"" << margin << "\" y2=\""
      << margin << "\" stroke=\"black\"/>\n";
  auto label = [&](double x, double y, const std::string& text, const char* anchor) {
    out << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" text-anchor=\"" << anchor
        << "\">" << text << "</text>\n";
  };
  std::ostringstream lo, hi, vlo, vhi;
  lo << fig.xmin;
  hi << fig.xmax;
  vlo << fig.ymin;
  vhi << fig.ymax;
  label(margin, H - margin + 16, lo.str(), "middle");
  label(W - margin, H - margin + 16, hi.str(), "middle");
  label(margin - 6, H - margin, vlo.str(), "end");
  label(margin - 6, margin + 4, vhi.str(), "end");
  if (notes.delta || notes.K) {
    std::string text;
    if (notes.delta) text += "delta = " + to_string(*notes.delta);
    if (notes.K) text += (text.empty() ? "" : ", ") + std::string("K = ") + to_string(*notes.K);
    label(W - margin, margin - 8, text, "end");
  }
  const char* colors[] = {"#1f77b4", "#d62728"};
  for (const auto& line : fig.lines) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[line.color % 2]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : line.points) out << px(x) << ',' << py(y) << ' ';
    out << "\"/>\n";
  }
  for (const auto& [x, y] : fig.dots)
    out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  out << "</svg>\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void write_map_csv(const PiecewiseMap& map, const std::string& path) {
  std::ofstream out = open_out(path);
  map_rows(map, out);
  if (!out) throw IoError("write failed: " + path);
}

void write_strip_csv(const Strip& strip, const std::string& path) {
  std::ofstream out = open_out(path);
  strip_rows(strip, out);
  if (!out) throw IoError("write failed: " + path);
}

void write_map_svg(const PiecewiseMap& map, const std::string& path,
                   const PlotAnnotations& notes) {
  write_svg(map_figure(map), path, notes);
}

void write_strip_svg(const Strip& strip, const std::string& path, const PlotAnnotations& notes) {
  Figure fig;
  bool first = true;
  step_polylines(strip.lower(), fig, first, 0);
  step_polylines(strip.upper(), fig, first, 1);
  write_svg(fig, path, notes);
}

}  // namespace oscot
