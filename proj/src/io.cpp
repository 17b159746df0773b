#include "stretchlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace stretchlab {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

std::string format_fixed(double v, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, precision);
  return std::string(buf, ptr);
}

double require_number(const json& j, const char* field) {
  if (!j.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return j.get<double>();
}

CylinderSpec parse_cylinder(const json& j) {
  if (!j.is_object()) throw ParseError("cylinder entry must be an object");
  CylinderSpec cyl;
  cyl.core_id = j.value("core_id", std::string{});
  if (cyl.core_id.empty()) throw ParseError("cylinder missing 'core_id'");
  if (!j.contains("width")) throw ParseError("cylinder missing 'width'");
  cyl.width = require_number(j.at("width"), "width");
  if (!j.contains("bands") || !j.at("bands").is_array())
    throw ParseError("cylinder missing 'bands' array");
  for (const json& band : j.at("bands")) {
    if (!band.is_array()) throw ParseError("band must be an array of arc lengths");
    BandSpec b;
    for (const json& arc : band) b.arcs.push_back(require_number(arc, "arc"));
    cyl.bands.push_back(std::move(b));
  }
  cyl.validate();
  return cyl;
}

RaySpec parse_ray(const json& j) {
  if (!j.is_object()) throw ParseError("ray entry must be an object");
  RaySpec ray;
  ray.id = j.value("id", std::string{});
  if (j.contains("offset")) ray.offset = require_number(j.at("offset"), "offset");
  if (!j.contains("cylinders") || !j.at("cylinders").is_array())
    throw ParseError("ray missing 'cylinders' array");
  for (const json& c : j.at("cylinders")) ray.cylinders.push_back(parse_cylinder(c));
  ray.validate();
  return ray;
}

TransverseCurveData parse_curve(const json& j) {
  if (!j.is_object()) throw ParseError("curve entry must be an object");
  TransverseCurveData curve;
  curve.id = j.value("id", std::string{});
  for (const char* key : {"crossings", "turnings"}) {
    if (!j.contains(key)) continue;
    const json& m = j.at(key);
    if (!m.is_object()) throw ParseError(std::string("'") + key + "' must be an object");
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_number_integer() || it.value().get<long long>() < 0)
        throw InvariantError("intersection count not a non-negative integer");
      auto& dst = (key[0] == 'c') ? curve.crossings : curve.turnings;
      dst[it.key()] = it.value().get<int>();
    }
  }
  return curve;
}

json cylinder_to_json(const CylinderSpec& cyl) {
  json bands = json::array();
  for (const BandSpec& b : cyl.bands) bands.push_back(b.arcs);
  return {{"core_id", cyl.core_id}, {"width", cyl.width}, {"bands", bands}};
}

const char* classification_name(RayClass c) {
  switch (c) {
    case RayClass::same_direction: return "same_direction";
    case RayClass::divergent_same_multicurve: return "divergent_same_multicurve";
    case RayClass::divergent_different_multicurve: return "divergent_different_multicurve";
  }
  return "?";
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!j.is_object()) throw ParseError("top-level document must be an object");
  Document doc;
  if (j.contains("rays")) {
    if (!j.at("rays").is_array()) throw ParseError("'rays' must be an array");
    for (const json& r : j.at("rays")) doc.rays.push_back(parse_ray(r));
  }
  if (j.contains("curves")) {
    if (!j.at("curves").is_array()) throw ParseError("'curves' must be an array");
    for (const json& c : j.at("curves")) doc.curves.push_back(parse_curve(c));
  }
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string print_document(const Document& doc) {
  json j = json::object();
  json rays = json::array();
  for (const RaySpec& r : doc.rays) {
    json cylinders = json::array();
    for (const CylinderSpec& c : r.cylinders) cylinders.push_back(cylinder_to_json(c));
    rays.push_back({{"id", r.id}, {"offset", r.offset}, {"cylinders", cylinders}});
  }
  j["rays"] = rays;
  json curves = json::array();
  for (const TransverseCurveData& c : doc.curves) {
    json crossings = json::object(), turnings = json::object();
    for (const auto& [k, v] : c.crossings) crossings[k] = v;
    for (const auto& [k, v] : c.turnings) turnings[k] = v;
    curves.push_back({{"id", c.id}, {"crossings", crossings}, {"turnings", turnings}});
  }
  j["curves"] = curves;
  return j.dump(2) + "\n";
}

void SweepConfig::validate() const {
  if (steps < 1) throw InvariantError("steps < 1");
  if (t_min > t_max) throw InvariantError("t_min > t_max");
}

std::vector<double> SweepConfig::grid() const {
  validate();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(t_min);
    return out;
  }
  const double step = (t_max - t_min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out.push_back(t_min + i * step);
  return out;
}

std::vector<SweepRow> run_sweep(const RaySpec& ray, const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (const CylinderSpec& cyl : ray.cylinders) {
    const CylinderSpec trunc = truncate(cyl);
    const AsymptoticData asym = asymptote(cyl);
    for (double t : cfg.grid()) {
      const double te = t + ray.offset;
      SweepRow row;
      row.core_id = cyl.core_id;
      row.t = t;
      row.log_w_t = width_at(cyl, te).logmag;
      row.h_prime = height(trunc, te);
      row.h = height(cyl, te, cfg.cut);
      row.h_star = min_leaf(cyl, te).h_star.to_real();
      row.log_asymptote = log_asymptotic_length(asym, te);
      row.ratio_h_over_asym = std::exp(log_height(cyl, te, cfg.cut) - row.log_asymptote);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "core_id,t,log_w_t,h_prime,h,h_star,log_asymptote,ratio_h_over_asym\n";
  for (const SweepRow& r : rows) {
    out += r.core_id;
    for (double v : {r.t, r.log_w_t, r.h_prime, r.h, r.h_star, r.log_asymptote,
                     r.ratio_h_over_asym}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "core_id        t     log_w(t)        h'            h             h*       ratio h/asym\n";
  for (const SweepRow& r : rows) {
    std::string line = r.core_id;
    line.resize(std::max<std::size_t>(line.size() + 1, 10), ' ');
    out << line << format_fixed(r.t, 4) << "  " << format_fixed(r.log_w_t, 6) << "  "
        << format_double(r.h_prime) << "  " << format_double(r.h) << "  "
        << format_double(r.h_star) << "  " << format_fixed(r.ratio_h_over_asym, 9)
        << "\n";
  }
  return out.str();
}

std::string sweep_svg(const std::vector<SweepRow>& rows) {
  // Decay diagnostic: ratio h / asymptote against t, one polyline per core.
  constexpr double W = 640, H = 400, ML = 60, MR = 20, MT = 20, MB = 40;
  double t_lo = 0, t_hi = 1, y_lo = 0, y_hi = 1;
  bool first = true;
  for (const SweepRow& r : rows) {
    if (!std::isfinite(r.ratio_h_over_asym)) continue;
    if (first) {
      t_lo = t_hi = r.t;
      y_lo = y_hi = r.ratio_h_over_asym;
      first = false;
    }
    t_lo = std::min(t_lo, r.t);
    t_hi = std::max(t_hi, r.t);
    y_lo = std::min(y_lo, r.ratio_h_over_asym);
    y_hi = std::max(y_hi, r.ratio_h_over_asym);
  }
  if (t_hi == t_lo) t_hi = t_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;
  const auto px = [&](double t) { return ML + (t - t_lo) / (t_hi - t_lo) * (W - ML - MR); };
  const auto py = [&](double y) { return H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB); };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  std::vector<std::string> cores;
  for (const SweepRow& r : rows)
    if (std::find(cores.begin(), cores.end(), r.core_id) == cores.end())
      cores.push_back(r.core_id);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (W / 2) << "\" y=\"" << H - 8
      << "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";
  out << "<text x=\"14\" y=\"" << (H / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << (H / 2) << ")\">h / asymptote</text>\n";
  for (std::size_t k = 0; k < cores.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[k % 6] << "\" points=\"";
    bool sep = false;
    for (const SweepRow& r : rows) {
      if (r.core_id != cores[k] || !std::isfinite(r.ratio_h_over_asym)) continue;
      if (sep) out << ' ';
      out << format_fixed(px(r.t), 2) << ',' << format_fixed(py(r.ratio_h_over_asym), 2);
      sep = true;
    }
    out << "\"/>\n";
    out << "<text x=\"" << W - MR - 4 << "\" y=\"" << MT + 14 + 16 * k
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << kColors[k % 6] << "\">"
        << cores[k] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

CompareResult run_compare(const RaySpec& g, const RaySpec& h, const SweepConfig& cfg) {
  CompareResult res;
  res.report = classify(g, h);
  RaySpec h_re = h;
  const bool reparam = res.report.witness_u.has_value();
  if (reparam) h_re.offset += *res.report.witness_u;
  for (double t : cfg.grid()) {
    CompareRow row;
    row.t = t;
    row.bound_g_to_h = ratio_bound(g, h, t);
    row.bound_h_to_g = ratio_bound(h, g, t);
    row.bound_g_to_h_reparam =
        reparam ? ratio_bound(g, h_re, t) : std::numeric_limits<double>::quiet_NaN();
    row.bound_h_to_g_reparam =
        reparam ? ratio_bound(h_re, g, t) : std::numeric_limits<double>::quiet_NaN();
    res.rows.push_back(row);
  }
  return res;
}

std::string compare_csv(const CompareResult& res) {
  std::string out =
      "t,bound_g_to_h,bound_h_to_g,bound_g_to_h_reparam,bound_h_to_g_reparam\n";
  for (const CompareRow& r : res.rows) {
    out += format_double(r.t);
    for (double v : {r.bound_g_to_h, r.bound_h_to_g, r.bound_g_to_h_reparam,
                     r.bound_h_to_g_reparam}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::string compare_report(const CompareResult& res) {
  std::ostringstream out;
  out << "classification: " << classification_name(res.report.classification) << "\n";
  for (const auto& [j, d] : res.report.deltas)
    out << "delta[" << j << "] = " << format_double(d) << "\n";
  for (const auto& [j, p] : res.report.prefactors)
    out << "prefactor[" << j << "] = " << format_double(p) << "\n";
  if (res.report.witness_u) {
    out << "witness_u = " << format_double(*res.report.witness_u) << "  (j0 = "
        << *res.report.j0 << ", j1 = " << *res.report.j1 << ")\n";
  }
  if (res.report.classification == RayClass::divergent_different_multicurve) {
    out << "note: directions live on different multicurves; a curve crossing one\n"
           "stump stretches like e^t while staying bounded or shrinking for the\n"
           "other ray, so both directed distances tend to infinity.\n";
  }
  out << "\nt  d(g_t,h_t)>=  d(h_t,g_t)>=  [after reparam]\n";
  for (const CompareRow& r : res.rows) {
    out << format_fixed(r.t, 4) << "  " << format_double(r.bound_g_to_h) << "  "
        << format_double(r.bound_h_to_g);
    if (!std::isnan(r.bound_g_to_h_reparam))
      out << "  " << format_double(r.bound_g_to_h_reparam) << "  "
          << format_double(r.bound_h_to_g_reparam);
    out << "\n";
  }
  return out.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::fwrite(data.data(), 1, data.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << data;
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace stretchlab
