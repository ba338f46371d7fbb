#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toposcan/workbench.hpp"

namespace {

using toposcan::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-site topos invariant workbench"};
  app.require_subcommand(1);

  std::string site_path, report_path, subcategory_csv;
  bool serial = false, geometric = false;
  int max_objects = 2, max_arrows = 5;
  bool with_topologies = false;

  CLI::App* classify = app.add_subcommand("classify", "classify one site file");
  classify->add_option("--site", site_path, "site JSON document")->required();
  classify->add_option("--report", report_path, "write the report line here instead of stdout");
  classify->add_flag("--geometric", geometric, "trust the site to be geometric; adds shortcut rows");

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate categories (and topologies)");
  enumerate->add_option("--max-objects", max_objects, "object bound")->required();
  enumerate->add_option("--max-arrows", max_arrows, "total arrow bound")->required();
  enumerate->add_flag("--topologies", with_topologies, "emit one site per Grothendieck topology");
  enumerate->add_flag("--serial", serial, "single-threaded reference path");

  CLI::App* bridge = app.add_subcommand("bridge", "Comparison-Lemma check for a full subcategory");
  bridge->add_option("--site", site_path, "site JSON document")->required();
  bridge->add_option("--subcategory", subcategory_csv, "comma-separated object names")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance sweep");
  selftest->add_option("--report", report_path, "write the JSON-lines classification report here");
  selftest->add_flag("--serial", serial, "single-threaded reference path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      const toposcan::ParsedSite parsed = toposcan::parse_site_full(Json::parse(read_file(site_path)));
      if (geometric && !parsed.coverage_presented)
        throw std::runtime_error("--geometric requires a coverage-presented site");
      toposcan::ClassifyOptions opts;
      opts.geometric = geometric;
      const auto report = toposcan::classify_site(parsed.site, site_path, opts);
      write_output(report_path, toposcan::report_json(report).dump() + "\n");
      return 0;
    }
    if (enumerate->parsed()) {
      const toposcan::CategoryBounds bounds{max_objects, max_arrows};
      const auto cats = toposcan::enumerate_categories_list(bounds, !serial);
      long long sites = 0;
      for (size_t i = 0; i < cats.size(); ++i) {
        if (with_topologies) {
          const auto tops = toposcan::enumerate_topologies(cats[i]);
          for (const auto& top : tops) {
            std::cout << toposcan::site_document({cats[i], top}).dump() << "\n";
            ++sites;
          }
        } else {
          std::cout << toposcan::site_document({cats[i], toposcan::trivial_topology(cats[i])}).dump()
                    << "\n";
          ++sites;
        }
      }
      std::cerr << cats.size() << " categories, " << sites << " sites\n";
      return 0;
    }
    if (bridge->parsed()) {
      const toposcan::Site site = toposcan::parse_site_text(read_file(site_path));
      std::vector<toposcan::ObjId> objs;
      std::stringstream ss(subcategory_csv);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        const toposcan::ObjId c = site.cat.object_index(name);
        if (c < 0) throw std::runtime_error("unknown object " + name);
        objs.push_back(c);
      }
      const auto report = toposcan::bridge_check(site, objs, site_path);
      std::cout << toposcan::bridge_json(report).dump() << "\n";
      return 0;
    }
    if (selftest->parsed()) {
      const auto bounds = toposcan::sweep_bounds_from_env();
      const auto result = toposcan::run_selftest(bounds, !serial);
      for (const std::string& ln : result.lines) std::cout << ln << "\n";
      std::cout << (result.pass ? "SELFTEST: PASS" : "SELFTEST: FAIL") << " (findings: "
                << result.findings << ")\n";
      if (!report_path.empty()) write_output(report_path, result.report_text);
      return result.pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
