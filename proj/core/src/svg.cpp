#include "mindiam/svg.hpp"

#include <algorithm>
#include <cmath>

namespace mindiam {

namespace {

const char* kPalette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                          "#66ccee", "#aa3377", "#bbbbbb"};

std::string color_for(int i) {
  return kPalette[static_cast<std::size_t>(i) % (sizeof kPalette / sizeof kPalette[0])];
}

}  // namespace

std::string render_svg(const ParsedInstance& instance, const std::optional<Selection>& selection) {
  // collect all drawable coordinates to size the view box (y flipped)
  std::vector<Vec2> pts;
  if (instance.model == "indecisive") {
    for (const auto& cls : instance.indecisive->classes())
      for (const Point& p : cls) pts.push_back(to_vec2(p));
  } else {
    for (const ConvexPolygon& poly : instance.imprecise->polygons())
      for (const Vec2& v : poly.vertices()) pts.push_back(v);
  }
  if (selection.has_value())
    for (const Point& p : selection->points) pts.push_back(to_vec2(p));

  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const Vec2& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-6});
  const double margin = 0.08 * span;
  const double marker = 0.012 * span;
  auto fy = [&](double y) { return maxy - y + miny; };  // SVG y axis points down

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         format_number(minx - margin) + " " + format_number(miny - margin) + " " +
         format_number(span + 2 * margin) + " " + format_number(span + 2 * margin) + "\">\n";

  if (instance.model == "imprecise") {
    const auto& polys = instance.imprecise->polygons();
    for (std::size_t r = 0; r < polys.size(); ++r) {
      const auto& vs = polys[r].vertices();
      if (vs.size() == 1) {
        out += "  <circle cx=\"" + format_number(vs[0].x) + "\" cy=\"" + format_number(fy(vs[0].y)) +
               "\" r=\"" + format_number(marker) + "\" fill=\"" + color_for(static_cast<int>(r)) + "\"/>\n";
        continue;
      }
      out += "  <polygon points=\"";
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ' ';
        out += format_number(vs[i].x) + "," + format_number(fy(vs[i].y));
      }
      out += "\" fill=\"" + color_for(static_cast<int>(r)) + "\" fill-opacity=\"0.35\" stroke=\"" +
             color_for(static_cast<int>(r)) + "\" stroke-width=\"" + format_number(0.2 * marker) + "\"/>\n";
    }
  } else {
    const auto& classes = instance.indecisive->classes();
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (const Point& p : classes[c])
        out += "  <circle cx=\"" + format_number(p.x()) + "\" cy=\"" + format_number(fy(p.y())) +
               "\" r=\"" + format_number(marker) + "\" fill=\"" + color_for(static_cast<int>(c)) + "\"/>\n";
  }

  if (selection.has_value() && !selection->points.empty()) {
    const DiameterResult witness = selection->diameter();
    const Point& a = selection->points[static_cast<std::size_t>(witness.witness.first)];
    const Point& b = selection->points[static_cast<std::size_t>(witness.witness.second)];
    out += "  <line x1=\"" + format_number(a.x()) + "\" y1=\"" + format_number(fy(a.y())) +
           "\" x2=\"" + format_number(b.x()) + "\" y2=\"" + format_number(fy(b.y())) +
           "\" stroke=\"#cc0000\" stroke-width=\"" + format_number(0.5 * marker) + "\"/>\n";
    for (const Point& p : selection->points)
      out += "  <circle cx=\"" + format_number(p.x()) + "\" cy=\"" + format_number(fy(p.y())) +
             "\" r=\"" + format_number(0.7 * marker) + "\" fill=\"#000000\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mindiam
