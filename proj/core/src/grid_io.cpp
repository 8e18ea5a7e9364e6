#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dunkl/errors.hpp"
#include "dunkl/measure.hpp"

namespace dunkl {

using nlohmann::ordered_json;

std::string grid_spec_to_json(const GridSpec& spec) {
  ordered_json j;
  j["d"] = spec.d;
  j["k"] = spec.k;
  if (const auto* b = std::get_if<BoxDomain>(&spec.domain)) {
    j["domain"] = {{"type", "box"}, {"lower", b->lower}, {"upper", b->upper}};
  } else {
    const auto& b2 = std::get<BallDomain>(spec.domain);
    j["domain"] = {{"type", "ball"}, {"center", b2.center}, {"radius", b2.radius}};
  }
  j["panels"] = spec.panels;
  j["nodes_per_panel"] = spec.nodes_per_panel;
  if (spec.grading != 0.0) j["grading"] = spec.grading;
  if (!spec.breakpoints.empty()) j["breakpoints"] = spec.breakpoints;
  return j.dump();
}

GridSpec grid_spec_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("grid descriptor: ") + e.what(), 0);
  }
  try {
    GridSpec s;
    s.d = j.at("d").get<int>();
    s.k = j.at("k").get<std::vector<double>>();
    const auto& dom = j.at("domain");
    const std::string type = dom.value("type", "box");
    if (type == "box") {
      s.domain = BoxDomain{dom.at("lower").get<std::vector<double>>(), dom.at("upper").get<std::vector<double>>()};
    } else if (type == "ball") {
      s.domain = BallDomain{dom.at("center").get<std::vector<double>>(), dom.at("radius").get<double>()};
    } else {
      throw ParseError("grid descriptor: unknown domain type '" + type + "'", 0);
    }
    s.panels = j.value("panels", 8);
    s.nodes_per_panel = j.value("nodes_per_panel", 64);
    s.grading = j.value("grading", 0.0);
    if (j.contains("breakpoints")) s.breakpoints = j["breakpoints"].get<std::vector<std::vector<double>>>();
    if (static_cast<int>(s.k.size()) != s.d) throw ParseError("grid descriptor: k must have d entries", 0);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("grid descriptor: ") + e.what(), 0);
  }
}

void write_csv(std::ostream& out, const SampledFunction& f, const std::vector<std::string>& comments) {
  const int d = f.grid()->dim();
  for (const auto& c : comments) out << "# " << c << '\n';
  for (int a = 0; a < d; ++a) out << "x_" << a + 1 << ',';
  out << "re,im\n";
  char buf[32];
  auto put = [&](double v) {
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, r.ptr - buf);
  };
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = f.grid()->node(i);
    for (int a = 0; a < d; ++a) {
      put(x[a]);
      out << ',';
    }
    put(f[i].real());
    out << ',';
    put(f[i].imag());
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& field, long line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto r = std::from_chars(first, last, v);
  if (field.empty() || r.ec != std::errc() || r.ptr != last) throw ParseError("not a number: '" + field + "'", line);
  return v;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  long line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') {
      const auto b = line.find_first_not_of(" \t", 1);
      t.comments.push_back(b == std::string::npos ? std::string{} : line.substr(b));
      continue;
    }
    const auto fields = split_fields(line);
    if (!have_header) {
      if (fields.size() < 3) throw ParseError("header must be x_1..x_d,re,im", line_no);
      t.d = static_cast<int>(fields.size()) - 2;
      for (int a = 0; a < t.d; ++a)
        if (fields[a] != "x_" + std::to_string(a + 1)) throw ParseError("header must be x_1..x_d,re,im", line_no);
      if (fields[t.d] != "re" || fields[t.d + 1] != "im") throw ParseError("header must be x_1..x_d,re,im", line_no);
      have_header = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != t.d + 2)
      throw ParseError("expected " + std::to_string(t.d + 2) + " fields, found " + std::to_string(fields.size()),
                       line_no);
    for (int a = 0; a < t.d; ++a) t.nodes.push_back(parse_number(fields[a], line_no));
    t.values.emplace_back(parse_number(fields[t.d], line_no), parse_number(fields[t.d + 1], line_no));
  }
  if (!have_header) throw ParseError("empty input: no header row", std::max(line_no, 1L));
  if (t.values.empty()) throw ParseError("no data rows", line_no);
  return t;
}

SampledFunction bind_to_grid(const CsvTable& table, GridPtr grid) {
  if (table.d != grid->dim()) throw ParseError("CSV dimension does not match the grid", 0);
  if (table.values.size() != grid->size())
    throw ParseError("CSV has " + std::to_string(table.values.size()) + " rows, grid has " +
                         std::to_string(grid->size()) + " nodes",
                     0);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const auto x = grid->node(i);
    for (int a = 0; a < table.d; ++a) {
      const double v = table.nodes[i * table.d + a];
      if (std::abs(v - x[a]) > 1e-12 * (1.0 + std::abs(x[a])))
        throw ParseError("node coordinates do not match the grid", 0);
    }
  }
  return SampledFunction(std::move(grid), table.values);
}

}  // namespace dunkl
