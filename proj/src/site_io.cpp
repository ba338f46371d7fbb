#include <set>

#include "toposcan/workbench.hpp"

namespace toposcan {

using Json = nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!obj.is_object()) throw SiteParseError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw SiteParseError("unknown key \"" + key + "\" in " + where);
}

std::string require_string(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw SiteParseError("missing key \"" + key + "\" in " + where);
  if (!obj.at(key).is_string()) throw SiteParseError("key \"" + key + "\" in " + where + " must be a string");
  return obj.at(key).get<std::string>();
}

}  // namespace

ParsedSite parse_site_full(const Json& doc) {
  reject_unknown_keys(doc, {"objects", "arrows", "identities", "compose", "topology"}, "site");
  for (const char* key : {"objects", "arrows", "identities", "compose", "topology"})
    if (!doc.contains(key)) throw SiteParseError(std::string("missing section \"") + key + "\"");

  RawCategory raw;
  if (!doc.at("objects").is_array()) throw SiteParseError("objects must be an array");
  for (const Json& o : doc.at("objects")) {
    if (!o.is_string()) throw SiteParseError("object names must be strings");
    raw.objects.push_back(o.get<std::string>());
  }
  if (!doc.at("arrows").is_array()) throw SiteParseError("arrows must be an array");
  for (const Json& a : doc.at("arrows")) {
    reject_unknown_keys(a, {"id", "dom", "cod"}, "arrow");
    raw.arrows.push_back({require_string(a, "id", "arrow"), require_string(a, "dom", "arrow"),
                          require_string(a, "cod", "arrow")});
  }
  if (!doc.at("identities").is_object()) throw SiteParseError("identities must be an object");
  for (const auto& [obj, arr] : doc.at("identities").items()) {
    if (!arr.is_string()) throw SiteParseError("identity of " + obj + " must be an arrow id");
    raw.identities[obj] = arr.get<std::string>();
  }
  if (!doc.at("compose").is_array()) throw SiteParseError("compose must be an array");
  for (const Json& e : doc.at("compose")) {
    reject_unknown_keys(e, {"g", "f", "result"}, "compose entry");
    raw.compose.push_back({require_string(e, "g", "compose entry"),
                           require_string(e, "f", "compose entry"),
                           require_string(e, "result", "compose entry")});
  }

  CategoryValidation validation = validate_category(raw);
  if (!validation.ok()) {
    std::string msg = "invalid category:";
    for (const Violation& v : validation.violations) msg += "\n  " + v.kind + ": " + v.detail;
    throw SiteParseError(msg);
  }
  ParsedSite out;
  out.site.cat = std::move(*validation.category);
  const FiniteCategory& cat = out.site.cat;

  const Json& topo = doc.at("topology");
  auto parse_sieve_list = [&](const std::string& obj_name, const Json& lists) {
    const ObjId c = cat.object_index(obj_name);
    if (c < 0) throw SiteParseError("topology names unknown object " + obj_name);
    if (!lists.is_array()) throw SiteParseError("topology entry for " + obj_name + " must be an array");
    std::vector<std::vector<ArrId>> out_lists;
    for (const Json& list : lists) {
      if (!list.is_array()) throw SiteParseError("sieve entries must be arrays of arrow ids");
      std::vector<ArrId> ids;
      for (const Json& name : list) {
        if (!name.is_string()) throw SiteParseError("arrow ids must be strings");
        const ArrId f = cat.arrow_index(name.get<std::string>());
        if (f < 0) throw SiteParseError("unknown arrow " + name.get<std::string>() + " in topology");
        if (cat.cod(f) != c)
          throw SiteParseError("arrow " + name.get<std::string>() + " does not end at " + obj_name);
        ids.push_back(f);
      }
      out_lists.push_back(std::move(ids));
    }
    return out_lists;
  };

  if (topo.contains("covers")) {
    reject_unknown_keys(topo, {"covers"}, "topology");
    std::vector<std::vector<Sieve>> covers(cat.num_objects());
    for (const auto& [obj_name, lists] : topo.at("covers").items())
      for (const std::vector<ArrId>& ids : parse_sieve_list(obj_name, lists)) {
        const ObjId c = cat.object_index(obj_name);
        Sieve s{c, 0};
        for (ArrId f : ids) s.bits |= uint64_t{1} << f;
        covers[c].push_back(s);
      }
    TopologyValidation tv = validate_topology(cat, covers);
    if (!tv.ok()) {
      std::string msg = "invalid topology:";
      for (const Violation& v : tv.violations) msg += "\n  " + v.kind + ": " + v.detail;
      throw SiteParseError(msg);
    }
    out.site.top = std::move(*tv.topology);
  } else if (topo.contains("coverage")) {
    reject_unknown_keys(topo, {"coverage", "saturate"}, "topology");
    if (!topo.contains("saturate") || topo.at("saturate") != Json(true))
      throw SiteParseError("coverage-presented topology requires \"saturate\": true");
    out.coverage_presented = true;
    out.coverage.assign(cat.num_objects(), {});
    std::vector<std::vector<Sieve>> generated(cat.num_objects());
    for (const auto& [obj_name, lists] : topo.at("coverage").items())
      for (const std::vector<ArrId>& ids : parse_sieve_list(obj_name, lists)) {
        const ObjId c = cat.object_index(obj_name);
        out.coverage[c].push_back(ids);
        generated[c].push_back(generate(cat, c, ids));
      }
    out.site.top = saturate(cat, generated);
  } else {
    throw SiteParseError("topology must provide \"covers\" or \"coverage\"");
  }
  return out;
}

Site parse_site(const Json& doc) { return parse_site_full(doc).site; }

Site parse_site_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    throw SiteParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_site(doc);
}

Json site_document(const Site& site) {
  const FiniteCategory& cat = site.cat;
  Json doc;
  doc["objects"] = Json::array();
  for (const std::string& o : cat.objects) doc["objects"].push_back(o);
  doc["arrows"] = Json::array();
  for (const Arrow& a : cat.arrows)
    doc["arrows"].push_back(
        Json{{"id", a.name}, {"dom", cat.objects[a.dom]}, {"cod", cat.objects[a.cod]}});
  doc["identities"] = Json::object();
  for (ObjId c = 0; c < cat.num_objects(); ++c)
    doc["identities"][cat.objects[c]] = cat.arrows[cat.identity[c]].name;
  doc["compose"] = Json::array();
  for (ArrId g = 0; g < cat.num_arrows(); ++g)
    for (ArrId f = 0; f < cat.num_arrows(); ++f) {
      if (!cat.composable(g, f) || cat.is_identity(g) || cat.is_identity(f)) continue;
      doc["compose"].push_back(Json{{"g", cat.arrows[g].name},
                                    {"f", cat.arrows[f].name},
                                    {"result", cat.arrows[cat.compose(g, f)].name}});
    }
  Json covers = Json::object();
  for (ObjId c = 0; c < cat.num_objects(); ++c) {
    Json lists = Json::array();
    for (const Sieve& s : site.top.covers[c]) {
      Json arr = Json::array();
      for (ArrId f : sieve_members(s)) arr.push_back(cat.arrows[f].name);
      lists.push_back(arr);
    }
    covers[cat.objects[c]] = lists;
  }
  doc["topology"] = Json{{"covers", covers}};
  return doc;
}

}  // namespace toposcan
