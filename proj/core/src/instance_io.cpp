#include "mindiam/instance_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace mindiam {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  fail(ErrorCode::SchemaViolation, what);
}

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) schema_error(where + " must be a number");
  return node.get<double>();
}

std::vector<double> vector_at(const json& node, int d, const std::string& where) {
  if (!node.is_array() || static_cast<int>(node.size()) != d)
    schema_error(where + " must be an array of " + std::to_string(d) + " numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(number_at(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("instance must be a JSON object");

  ParsedInstance out;
  if (!root.contains("model") || !root["model"].is_string())
    schema_error("missing string field 'model'");
  out.model = root["model"].get<std::string>();
  if (out.model != "indecisive" && out.model != "imprecise")
    schema_error("model must be 'indecisive' or 'imprecise'");
  if (!root.contains("d") || !root["d"].is_number_integer())
    schema_error("missing integer field 'd'");
  out.d = root["d"].get<int>();
  if (out.d < 1) schema_error("d must be positive");

  const std::string payload = out.model == "indecisive" ? "colors" : "regions";
  for (const auto& [key, value] : root.items())
    if (key != "model" && key != "d" && key != payload)
      schema_error("unknown field '" + key + "'");
  if (!root.contains(payload) || !root[payload].is_array())
    schema_error("missing array field '" + payload + "'");

  if (out.model == "indecisive") {
    std::vector<std::vector<Point>> classes;
    for (std::size_t c = 0; c < root["colors"].size(); ++c) {
      const json& cls = root["colors"][c];
      if (!cls.is_array()) schema_error("colors[" + std::to_string(c) + "] must be an array");
      if (cls.empty()) fail(ErrorCode::EmptyColorClass, "colors[" + std::to_string(c) + "] is empty");
      std::vector<Point> pts;
      for (std::size_t i = 0; i < cls.size(); ++i)
        pts.emplace_back(vector_at(cls[i], out.d, "colors[" + std::to_string(c) + "][" + std::to_string(i) + "]"));
      classes.push_back(std::move(pts));
    }
    if (classes.empty()) schema_error("colors must be nonempty");
    out.indecisive = IndecisiveInstance(std::move(classes));
    return out;
  }

  if (root["regions"].empty()) schema_error("regions must be nonempty");
  if (out.d == 2) {
    std::vector<ConvexPolygon> regions;
    for (std::size_t r = 0; r < root["regions"].size(); ++r) {
      const json& reg = root["regions"][r];
      if (!reg.is_array() || reg.empty())
        schema_error("regions[" + std::to_string(r) + "] must be a nonempty array");
      std::vector<Vec2> vs;
      for (std::size_t i = 0; i < reg.size(); ++i) {
        const auto v = vector_at(reg[i], 2, "regions[" + std::to_string(r) + "][" + std::to_string(i) + "]");
        vs.push_back({v[0], v[1]});
      }
      regions.emplace_back(std::move(vs));  // throws NotCcw on clockwise input
    }
    out.imprecise = ImpreciseInstance(std::move(regions));
    return out;
  }

  std::vector<HalfspaceRegion> regions;
  for (std::size_t r = 0; r < root["regions"].size(); ++r) {
    const json& reg = root["regions"][r];
    if (!reg.is_array() || reg.empty())
      schema_error("regions[" + std::to_string(r) + "] must be a nonempty array");
    HalfspaceRegion hs_region;
    hs_region.dim = out.d;
    for (std::size_t i = 0; i < reg.size(); ++i) {
      const auto row = vector_at(reg[i], out.d + 1,
                                 "regions[" + std::to_string(r) + "][" + std::to_string(i) + "]");
      Halfspace hs;
      hs.a.assign(row.begin(), row.end() - 1);
      hs.b = row.back();
      hs_region.rows.push_back(std::move(hs));
    }
    regions.push_back(std::move(hs_region));
  }
  out.imprecise = ImpreciseInstance(out.d, std::move(regions));
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string serialize_instance(const ParsedInstance& instance) {
  std::string out = "{\"model\":\"" + instance.model + "\",\"d\":" + std::to_string(instance.d);
  auto append_vec = [&out](const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_number(v[i]);
    }
    out += ']';
  };
  if (instance.model == "indecisive") {
    out += ",\"colors\":[";
    const auto& classes = instance.indecisive->classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (c) out += ',';
      out += '[';
      for (std::size_t i = 0; i < classes[c].size(); ++i) {
        if (i) out += ',';
        append_vec(classes[c][i].coords);
      }
      out += ']';
    }
    out += ']';
  } else {
    out += ",\"regions\":[";
    if (instance.d == 2) {
      const auto& polys = instance.imprecise->polygons();
      for (std::size_t r = 0; r < polys.size(); ++r) {
        if (r) out += ',';
        out += '[';
        const auto& vs = polys[r].vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) {
          if (i) out += ',';
          append_vec({vs[i].x, vs[i].y});
        }
        out += ']';
      }
    } else {
      const auto& systems = instance.imprecise->halfspace_regions();
      for (std::size_t r = 0; r < systems.size(); ++r) {
        if (r) out += ',';
        out += '[';
        for (std::size_t i = 0; i < systems[r].rows.size(); ++i) {
          if (i) out += ',';
          std::vector<double> row = systems[r].rows[i].a;
          row.push_back(systems[r].rows[i].b);
          append_vec(row);
        }
        out += ']';
      }
    }
    out += ']';
  }
  out += '}';
  return out;
}

}  // namespace mindiam
