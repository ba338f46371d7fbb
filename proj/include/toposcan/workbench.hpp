#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "toposcan/criteria.hpp"
#include "toposcan/oracle.hpp"
#include "toposcan/sheaf.hpp"

namespace toposcan {

// ---------------------------------------------------------------- fixtures

// The named fixture categories used across tests and required to appear in
// the enumerated corpus.
FiniteCategory fixture_one();
FiniteCategory fixture_arrow();
FiniteCategory fixture_pair();
FiniteCategory fixture_span();
FiniteCategory fixture_d2();
FiniteCategory fixture_z2();

// ARROW with {u} covering b; the standard non-subcanonical example site.
Site site_arrow_jb();
// Terminal category with the empty sieve covering; the degenerate site.
Site site_one_degenerate();
Site with_trivial_topology(FiniteCategory cat);

// A one-object group presentation: composition table plus declared inverse
// table, cross-checked against each other.
struct GroupPresentation {
  RawCategory raw;
  std::map<std::string, std::string> inverses;  // arrow -> inverse arrow
};
GroupPresentation z2_presentation(bool flip_ss_to_s = false);
std::vector<Violation> validate_group_presentation(const GroupPresentation& g);

// ------------------------------------------------------------------ site IO

struct SiteParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strict parser for the site document: sections objects/arrows/identities/
// compose/topology, unknown keys rejected, every referenced name resolved.
Site parse_site(const nlohmann::ordered_json& doc);
Site parse_site_text(const std::string& text);
nlohmann::ordered_json site_document(const Site& site);

// The coverage lists of a coverage-presented document (empty when the
// topology was given extensionally).
struct ParsedSite {
  Site site;
  bool coverage_presented = false;
  std::vector<std::vector<std::vector<ArrId>>> coverage;
};
ParsedSite parse_site_full(const nlohmann::ordered_json& doc);

// ------------------------------------------------------------- enumeration

struct CategoryBounds {
  int max_objects = 0;
  int max_arrows = 0;
};

// Hard caps; sieve-set enumeration grows doubly exponentially beyond this.
constexpr CategoryBounds kHardBounds{3, 9};

// All finite categories within the bounds, up to isomorphism of the labeled
// data, streamed in no particular order. The sink may be invoked from
// several threads when parallel is set.
void enumerate_categories(const CategoryBounds& bounds,
                          const std::function<void(const FiniteCategory&)>& sink,
                          bool parallel = true);

// Collected and canonically sorted variant.
std::vector<FiniteCategory> enumerate_categories_list(const CategoryBounds& bounds,
                                                      bool parallel = true);

// Reference enumerator: labeled brute force plus isomorphism deduplication.
// Exponential; only usable for tiny bounds.
std::vector<FiniteCategory> naive_enumerate_categories(const CategoryBounds& bounds);

bool categories_isomorphic(const FiniteCategory& a, const FiniteCategory& b);

// Canonical sort key used for deterministic corpus ordering.
std::string category_key(const FiniteCategory& cat);

// All Grothendieck topologies on the category, canonically ordered.
std::vector<GrothendieckTopology> enumerate_topologies(const FiniteCategory& cat);

// --------------------------------------------------------------- classify

struct ClassifyOptions {
  bool geometric = false;  // trust the site to be geometric; adds shortcut rows
};

struct InvariantRow {
  CriterionVerdict criterion;
  OracleVerdict oracle;
  bool agree = false;
};

struct ClassificationReport {
  std::string site_id;
  int objects = 0;
  int arrows = 0;
  bool subcanonical = false;
  std::vector<std::string> degenerate_objects;
  int topology_size = 0;
  std::vector<std::pair<Invariant, InvariantRow>> rows;
  nlohmann::ordered_json findings = nlohmann::ordered_json::array();
  nlohmann::ordered_json shortcuts = nlohmann::ordered_json::array();

  bool all_agree_outside_findings() const;
};

ClassificationReport classify_site(const Site& site, const std::string& site_id,
                                   const ClassifyOptions& opts = {});
nlohmann::ordered_json report_json(const ClassificationReport& report);

// ------------------------------------------------------------------ bridge

struct BridgeReport {
  bool dense = false;
  std::string witness_object;  // when not dense
  std::optional<Site> induced;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  bool all_agree = false;
};

// Comparison-Lemma bridge: restrict to a full subcategory, induce the
// topology, classify both sides, and compare the oracle verdicts per
// invariant.
BridgeReport bridge_check(const Site& site, const std::vector<ObjId>& subcategory,
                          const std::string& site_id);
nlohmann::ordered_json bridge_json(const BridgeReport& report);

// All J-dense full subcategories of the site (by object subsets).
std::vector<std::vector<ObjId>> dense_subcategories(SiteContext& ctx);

// ---------------------------------------------------------------- selftest

struct SweepBounds {
  CategoryBounds topology_sweep{2, 5};  // exhaustive topology enumeration
  CategoryBounds trivial_sweep{3, 8};   // trivial-topology-only sweeps
};

// Reads TOPOSCAN_MAX_OBJECTS / TOPOSCAN_MAX_ARROWS /
// TOPOSCAN_TRIVIAL_MAX_OBJECTS / TOPOSCAN_TRIVIAL_MAX_ARROWS.
// Throws on malformed or out-of-cap values.
SweepBounds sweep_bounds_from_env();

struct SelftestResult {
  bool pass = true;
  int findings = 0;
  std::vector<std::string> lines;       // one line per acceptance criterion
  std::string report_text;              // JSON-lines classification report
};

SelftestResult run_selftest(const SweepBounds& bounds, bool parallel = true);

}  // namespace toposcan
