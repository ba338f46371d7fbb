#include <algorithm>
#include <stdexcept>

#include "toposcan/workbench.hpp"

namespace toposcan {

using Json = nlohmann::ordered_json;

bool ClassificationReport::all_agree_outside_findings() const {
  for (const auto& [inv, row] : rows) {
    if (row.agree) continue;
    if (inv == Invariant::localic && !subcanonical) continue;  // reported as a finding
    return false;
  }
  return true;
}

ClassificationReport classify_site(const Site& site, const std::string& site_id,
                                   const ClassifyOptions& opts) {
  SiteContext ctx(site);
  const FiniteCategory& cat = ctx.cat();

  ClassificationReport report;
  report.site_id = site_id;
  report.objects = cat.num_objects();
  report.arrows = cat.num_arrows();
  report.subcanonical = ctx.subcanonical();
  for (ObjId c = 0; c < cat.num_objects(); ++c)
    if (ctx.degenerate(c)) report.degenerate_objects.push_back(cat.objects[c]);
  report.topology_size = site.top.total_sieves();

  const bool trivial = site.top == trivial_topology(cat);

  auto run = [&](Invariant inv, CriterionVerdict criterion) {
    OracleVerdict oracle = oracle_invariant(ctx, inv);
    InvariantRow row{std::move(criterion), std::move(oracle), false};
    row.agree = row.criterion.value == row.oracle.value;
    if (!revalidate_criterion(ctx, invariant_name(inv), row.criterion))
      throw std::logic_error(std::string("criterion witness failed revalidation: ") +
                             invariant_name(inv));
    if (!revalidate_oracle(ctx, inv, row.oracle))
      throw std::logic_error(std::string("oracle witness failed revalidation: ") +
                             invariant_name(inv));
    if (!row.agree && inv == Invariant::localic && !report.subcanonical) {
      report.findings.push_back(Json{{"invariant", invariant_name(inv)},
                                     {"criterion", row.criterion.value},
                                     {"oracle", row.oracle.value},
                                     {"subcanonical", false},
                                     {"site_document", site_document(site)}});
    }
    report.rows.push_back({inv, std::move(row)});
  };

  run(Invariant::localic, is_localic(ctx));
  run(Invariant::atomic, is_atomic(ctx));
  run(Invariant::locally_connected, is_locally_connected(ctx));
  run(Invariant::presheaf_type, is_presheaf_type(ctx));
  run(Invariant::well_supported, has_separating_well_supported(ctx));

  // Shortcut coherence. On a trivial topology the localic criterion must
  // match the preorder test and the well-supported criterion the all-homs
  // condition; these equivalences are theorems, so mismatch is a defect.
  if (trivial) {
    const bool preorder = is_preorder(cat);
    const bool localic_value = report.rows[0].second.criterion.value;
    if (preorder != localic_value)
      throw std::logic_error("trivial-topology localic verdict disagrees with preorder test");
    bool all_homs = true;
    for (ObjId c = 0; c < cat.num_objects() && all_homs; ++c)
      for (ObjId d = 0; d < cat.num_objects() && all_homs; ++d)
        all_homs = !cat.hom(c, d).empty();
    if (all_homs != report.rows[4].second.criterion.value)
      throw std::logic_error("trivial-topology well-supported verdict disagrees with hom test");
    report.shortcuts.push_back(Json{{"shortcut", "localic_preorder"}, {"agrees", true}});
    report.shortcuts.push_back(Json{{"shortcut", "well_supported_all_homs"}, {"agrees", true}});
  }

  if (opts.geometric) {
    // User-flagged geometric site: evaluate the corollary shortcuts and
    // record whether they track the general criteria. The flag is trusted,
    // so disagreement is reported rather than thrown.
    std::vector<std::vector<std::vector<ArrId>>> coverage(cat.num_objects());
    for (ObjId c = 0; c < cat.num_objects(); ++c)
      for (const Sieve& s : site.top.covers[c]) coverage[c].push_back(sieve_members(s));
    const CriterionVerdict loc = localic_geometric_shortcut(cat, coverage);
    report.shortcuts.push_back(Json{{"shortcut", "localic_geometric"},
                                    {"value", loc.value},
                                    {"agrees", loc.value == report.rows[0].second.criterion.value}});
    bool has_both = true;
    try {
      const CriterionVerdict ws = well_supported_geometric_shortcut(ctx);
      report.shortcuts.push_back(
          Json{{"shortcut", "well_supported_geometric"},
               {"value", ws.value},
               {"agrees", ws.value == report.rows[4].second.criterion.value}});
    } catch (const std::invalid_argument&) {
      has_both = false;
    }
    if (!has_both)
      report.shortcuts.push_back(
          Json{{"shortcut", "well_supported_geometric"}, {"applicable", false}});
  }

  return report;
}

Json report_json(const ClassificationReport& report) {
  Json doc;
  doc["site"] = report.site_id;
  doc["metadata"] = Json{{"objects", report.objects},
                         {"arrows", report.arrows},
                         {"subcanonical", report.subcanonical},
                         {"degenerate_objects", report.degenerate_objects},
                         {"topology_size", report.topology_size}};
  Json invariants = Json::object();
  for (const auto& [inv, row] : report.rows)
    invariants[invariant_name(inv)] = Json{{"criterion", row.criterion.value},
                                           {"oracle", row.oracle.value},
                                           {"agree", row.agree},
                                           {"criterion_witness", row.criterion.witness},
                                           {"oracle_witness", row.oracle.witness}};
  doc["invariants"] = invariants;
  doc["findings"] = report.findings;
  if (!report.shortcuts.empty()) doc["shortcuts"] = report.shortcuts;
  return doc;
}

std::vector<std::vector<ObjId>> dense_subcategories(SiteContext& ctx) {
  const FiniteCategory& cat = ctx.cat();
  const int n = cat.num_objects();
  std::vector<std::vector<ObjId>> out;
  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    bool dense = true;
    for (ObjId c = 0; c < n && dense; ++c) {
      uint64_t gens = 0;
      for (ArrId f : cat.arrows_into(c))
        if (mask >> cat.dom(f) & 1) gens |= uint64_t{1} << f;
      dense = ctx.covering(generate_mask(cat, c, gens));
    }
    if (!dense) continue;
    std::vector<ObjId> objs;
    for (ObjId c = 0; c < n; ++c)
      if (mask >> c & 1) objs.push_back(c);
    out.push_back(std::move(objs));
  }
  return out;
}

namespace {

Site induced_site(const Site& site, const std::vector<ObjId>& subcategory) {
  const FiniteCategory& cat = site.cat;
  FiniteCategory sub;
  std::vector<int> obj_map(cat.num_objects(), -1);
  for (ObjId c : subcategory) {
    obj_map[c] = static_cast<int>(sub.objects.size());
    sub.objects.push_back(cat.objects[c]);
  }
  std::vector<int> arr_map(cat.num_arrows(), -1);
  for (ArrId f = 0; f < cat.num_arrows(); ++f)
    if (obj_map[cat.dom(f)] >= 0 && obj_map[cat.cod(f)] >= 0) {
      arr_map[f] = static_cast<int>(sub.arrows.size());
      sub.arrows.push_back({cat.arrows[f].name, obj_map[cat.dom(f)], obj_map[cat.cod(f)]});
    }
  sub.identity.assign(sub.objects.size(), -1);
  for (ObjId c : subcategory) sub.identity[obj_map[c]] = arr_map[cat.identity[c]];
  const int sm = sub.num_arrows();
  sub.table.assign(static_cast<size_t>(sm) * sm, -1);
  for (ArrId g = 0; g < cat.num_arrows(); ++g)
    for (ArrId f = 0; f < cat.num_arrows(); ++f)
      if (arr_map[g] >= 0 && arr_map[f] >= 0 && cat.composable(g, f))
        sub.table[static_cast<size_t>(arr_map[g]) * sm + arr_map[f]] =
            static_cast<int16_t>(arr_map[cat.compose(g, f)]);
  sub.finalize();

  // Induced covers: sieves of the subcategory whose generated ambient sieve
  // is J-covering; saturation is a fixpoint on them but run anyway.
  std::vector<std::vector<Sieve>> covers(sub.num_objects());
  for (ObjId c : subcategory) {
    const ObjId sc = obj_map[c];
    for (const Sieve& s : all_sieves_on(sub, sc)) {
      uint64_t gens = 0;
      for (ArrId f : sieve_members(s)) {
        // arrow names are preserved, recover the ambient arrow
        for (ArrId orig = 0; orig < cat.num_arrows(); ++orig)
          if (arr_map[orig] == f) gens |= uint64_t{1} << orig;
      }
      if (is_covering(cat, site.top, generate_mask(cat, c, gens))) covers[sc].push_back(s);
    }
  }
  Site out;
  out.cat = std::move(sub);
  out.top = saturate(out.cat, covers);
  return out;
}

}  // namespace

BridgeReport bridge_check(const Site& site, const std::vector<ObjId>& subcategory,
                          const std::string& site_id) {
  SiteContext ctx(site);
  const FiniteCategory& cat = ctx.cat();
  BridgeReport report;

  if (subcategory.empty()) {
    bool all_zero = true;
    for (ObjId c = 0; c < cat.num_objects(); ++c)
      if (!ctx.degenerate(c)) all_zero = false;
    if (!all_zero) {
      report.dense = false;
      for (ObjId c = 0; c < cat.num_objects(); ++c)
        if (!ctx.degenerate(c)) {
          report.witness_object = cat.objects[c];
          break;
        }
      return report;
    }
  }

  for (ObjId c = 0; c < cat.num_objects(); ++c) {
    uint64_t gens = 0;
    for (ArrId f : cat.arrows_into(c))
      if (std::find(subcategory.begin(), subcategory.end(), cat.dom(f)) != subcategory.end())
        gens |= uint64_t{1} << f;
    if (!ctx.covering(generate_mask(cat, c, gens))) {
      report.dense = false;
      report.witness_object = cat.objects[c];
      return report;
    }
  }
  report.dense = true;

  Site induced = induced_site(site, subcategory);
  const TopologyValidation check = validate_topology(induced.cat, induced.top.covers);
  if (!check.ok()) throw std::logic_error("induced topology failed validation");

  const ClassificationReport ambient = classify_site(site, site_id);
  const ClassificationReport restricted = classify_site(induced, site_id + "|D");

  report.all_agree = true;
  for (size_t i = 0; i < ambient.rows.size(); ++i) {
    const auto& [inv, arow] = ambient.rows[i];
    const auto& brow = restricted.rows[i].second;
    const bool agree = arow.oracle.value == brow.oracle.value;
    report.all_agree = report.all_agree && agree;
    report.rows.push_back(Json{{"invariant", invariant_name(inv)},
                               {"ambient_oracle", arow.oracle.value},
                               {"induced_oracle", brow.oracle.value},
                               {"agree", agree},
                               {"ambient_criterion", arow.criterion.value},
                               {"induced_criterion", brow.criterion.value}});
  }
  report.induced = std::move(induced);
  return report;
}

Json bridge_json(const BridgeReport& report) {
  Json doc;
  doc["dense"] = report.dense;
  if (!report.dense) {
    doc["witness_object"] = report.witness_object;
    return doc;
  }
  doc["induced_site"] = site_document(*report.induced);
  doc["rows"] = report.rows;
  doc["all_agree"] = report.all_agree;
  return doc;
}

}  // namespace toposcan
