// stretch-lab: batch front end over the cylinder / stretch-ray library.

#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stretchlab/io.hpp"

namespace {

using namespace stretchlab;
using nlohmann::json;

// Values beyond native double range travel as {"log": ln|x|}.
json ext_to_json(const ExtScalar& v) {
  if (v.is_zero()) return 0.0;
  if (std::fabs(v.logmag) > 700.0) {
    json j = {{"log", v.logmag}};
    if (v.sign < 0) j["sign"] = -1;
    return j;
  }
  return v.to_real();
}

const RaySpec& pick_ray(const Document& doc, const std::string& id, std::size_t fallback) {
  if (!id.empty()) {
    for (const RaySpec& r : doc.rays)
      if (r.id == id) return r;
    throw InvariantError("no ray with id '" + id + "'");
  }
  if (doc.rays.size() <= fallback)
    throw InvariantError("document does not contain enough rays");
  return doc.rays[fallback];
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "table";
  std::string ray_id, ray_g, ray_h;
  double t_min = 0.0, t_max = 0.0, t = 0.0;
  int steps = 1;
  std::size_t cut = 0;
  bool apply_witness = false;
  bool have_d = false;
  double d = 0.0;
};

OutputFormat parse_format(const std::string& f) {
  if (f == "table") return OutputFormat::table;
  if (f == "csv") return OutputFormat::csv;
  if (f == "svg") return OutputFormat::svg;
  throw InvariantError("unknown format '" + f + "'");
}

int run(const std::string& cmd, const Options& opt) {
  const Document doc = load_document(opt.input);
  SweepConfig cfg;
  cfg.t_min = opt.t_min;
  cfg.t_max = opt.t_max;
  cfg.steps = opt.steps;
  cfg.cut = opt.cut;
  cfg.format = parse_format(opt.format);

  if (cmd == "sweep") {
    const RaySpec& ray = pick_ray(doc, opt.ray_id, 0);
    const std::vector<SweepRow> rows = run_sweep(ray, cfg);
    std::string out;
    switch (cfg.format) {
      case OutputFormat::csv: out = sweep_csv(rows); break;
      case OutputFormat::svg: out = sweep_svg(rows); break;
      case OutputFormat::table: out = sweep_table(rows); break;
    }
    write_output(opt.output, out);
    return 0;
  }

  if (cmd == "compare") {
    const RaySpec& g = pick_ray(doc, opt.ray_g, 0);
    RaySpec h = pick_ray(doc, opt.ray_h, 1);
    if (opt.apply_witness) {
      const DivergenceReport rep = classify(g, h);
      if (rep.witness_u) h.offset += *rep.witness_u;
    }
    const CompareResult res = run_compare(g, h, cfg);
    write_output(opt.output, cfg.format == OutputFormat::csv ? compare_csv(res)
                                                             : compare_report(res));
    return 0;
  }

  // Single-operation subcommands emit JSON.
  json out = json::array();
  const RaySpec& ray = pick_ray(doc, opt.ray_id, 0);
  for (const CylinderSpec& cyl : ray.cylinders) {
    const double te = opt.t + ray.offset;
    json entry = {{"core_id", cyl.core_id}, {"t", opt.t}};
    if (cmd == "leaf") {
      if (opt.have_d) {
        entry["leaf_length"] =
            ext_to_json(leaf_length(cyl, te, ExtScalar::from_real(opt.d)));
      } else {
        const MinLeaf ml = min_leaf(cyl, te);
        entry["d_star"] = ext_to_json(ml.d_star);
        entry["h_star"] = ext_to_json(ml.h_star);
        entry["interior"] = ml.interior;
      }
    } else if (cmd == "height") {
      entry["h"] = height(cyl, te, opt.cut);
      entry["log_h"] = log_height(cyl, te, opt.cut);
      entry["h_prime"] = height(truncate(cyl), te);
    } else if (cmd == "asymptote") {
      const AsymptoticData a = asymptote(cyl);
      entry["K"] = a.K;
      entry["w"] = a.w;
      entry["asymptotic_length"] = ext_to_json(asymptotic_length(a, te));
      entry["log_asymptotic_length"] = log_asymptotic_length(a, te);
    } else if (cmd == "truncate") {
      const CylinderSpec tr = truncate(cyl);
      json bands = json::array();
      for (const BandSpec& b : tr.bands) bands.push_back(b.arcs);
      entry = {{"core_id", tr.core_id}, {"width", tr.width}, {"bands", bands}};
    }
    out.push_back(std::move(entry));
  }
  write_output(opt.output, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and asymptotic geometry along cylindrical stretch lines"};
  app.require_subcommand(1);

  Options opt;
  std::string cmd;
  for (const char* name : {"sweep", "compare", "leaf", "height", "asymptote", "truncate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--input", opt.input, "input JSON document")->required();
    sub->add_option("--output", opt.output, "output file (default stdout)");
    sub->add_option("--t-min", opt.t_min);
    sub->add_option("--t-max", opt.t_max);
    sub->add_option("--steps", opt.steps);
    sub->add_option("--t", opt.t, "evaluation time for single-point commands");
    sub->add_option("--cut", opt.cut, "band-boundary index for the height cut");
    sub->add_option("--format", opt.format, "table|csv|svg");
    sub->add_option("--ray", opt.ray_id, "ray id (default: first in document)");
    if (std::string(name) == "compare") {
      sub->add_option("--ray-g", opt.ray_g);
      sub->add_option("--ray-h", opt.ray_h);
      sub->add_flag("--apply-witness", opt.apply_witness,
                    "apply the divergence witness offset to ray h");
    }
    if (std::string(name) == "leaf")
      sub->add_option("--d", opt.d, "evaluate the leaf at distance d")
          ->each([&](const std::string&) { opt.have_d = true; });
    sub->callback([&cmd, name] { cmd = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    return run(cmd, opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const InvariantError& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  }
}
