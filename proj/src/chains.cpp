#include "chains.hpp"

#include <algorithm>
#include <cmath>

#include "constants.hpp"

namespace curvebound::chains {

std::string_view kind_name(Kind k) { return k == Kind::annular ? "annular" : "nonannular"; }
std::string_view mode_name(Mode m) { return m == Mode::annular ? "annular" : "mixed"; }
std::string_view side_name(Side s) { return s == Side::x ? "x" : "y"; }

Mode parse_mode(std::string_view name) {
  if (name == "annular") return Mode::annular;
  if (name == "mixed") return Mode::mixed;
  fail(ErrorCode::parse, "unknown chain mode '" + std::string(name) + "'");
}

namespace {

Kind parse_kind(std::string_view name) {
  if (name == "annular") return Kind::annular;
  if (name == "nonannular") return Kind::nonannular;
  fail(ErrorCode::parse, "unknown subsurface kind '" + std::string(name) + "'");
}

u128 side_intersection(const SubsurfaceDatum& z, Side side) { return side == Side::x ? z.i_x : z.i_y; }

bool within(Real lhs, Real rhs, Real tolerance) {
  return rhs - lhs >= -tolerance * std::max({Real(1), std::fabs(lhs), std::fabs(rhs)});
}

void require_cutoff(i64 n, Mode mode) {
  if (mode == Mode::annular && n < 18) fail(ErrorCode::precondition, "annular chains require a cutoff n >= 18");
  if (mode == Mode::mixed && n < 28) fail(ErrorCode::precondition, "mixed chains require a cutoff n >= 28");
}

const SubsurfaceDatum& lookup(const std::map<std::string, const SubsurfaceDatum*>& index, const std::string& id) {
  const auto it = index.find(id);
  if (it == index.end()) fail(ErrorCode::invalid_argument, "unknown subsurface id '" + id + "'");
  return *it->second;
}

std::map<std::string, const SubsurfaceDatum*> index_of(const std::vector<SubsurfaceDatum>& collection) {
  std::map<std::string, const SubsurfaceDatum*> index;
  for (const SubsurfaceDatum& z : collection) {
    if (z.id.empty()) fail(ErrorCode::invalid_argument, "subsurface ids must be nonempty");
    if (!index.emplace(z.id, &z).second) fail(ErrorCode::invalid_argument, "duplicate subsurface id '" + z.id + "'");
  }
  return index;
}

void check_collection(const std::vector<SubsurfaceDatum>& collection, i64 n, Mode mode) {
  const auto index = index_of(collection);
  for (const SubsurfaceDatum& z : collection) {
    if (z.d_xy <= static_cast<u128>(n))
      fail(ErrorCode::invalid_argument, "subsurface '" + z.id + "' has d_xy not above the cutoff");
    if (mode == Mode::annular && z.kind != Kind::annular)
      fail(ErrorCode::invalid_argument, "annular mode admits only annular subsurfaces ('" + z.id + "')");
    for (const auto& [other, datum] : z.cross) {
      (void)datum;
      if (other == z.id) fail(ErrorCode::invalid_argument, "subsurface '" + z.id + "' lists itself as a partner");
      const SubsurfaceDatum& w = lookup(index, other);
      if (!w.cross.count(z.id))
        fail(ErrorCode::invalid_argument, "overlap relation is not symmetric between '" + z.id + "' and '" + other + "'");
    }
  }
}

}  // namespace

Real d_weight(const SubsurfaceDatum& z) {
  return z.kind == Kind::annular ? log2_count(z.d_xy) : to_real(z.d_xy);
}

Real relation_scale(i64 n, Mode mode) {
  require_cutoff(n, mode);
  const Real h = static_cast<Real>(constants::half_index(n));
  return 2 * (mode == Mode::annular ? constants::l_small(h) : constants::L_big(h));
}

RelationWitness rel(const SubsurfaceDatum& p, const SubsurfaceDatum& q, i64 n, Side side, Mode mode,
                    const RelOptions& opt) {
  if (p.id == q.id) fail(ErrorCode::precondition, "the relation compares two distinct subsurfaces");
  const Real scale = relation_scale(n, mode);
  const Real lhs = d_weight(q) / scale + log2_count(side_intersection(q, side));
  const Real rhs = log2_count(side_intersection(p, side));
  return RelationWitness{within(lhs, rhs, opt.tolerance), lhs, rhs};
}

std::vector<std::string> ChainCertificate::ordered_ids() const {
  std::vector<std::string> out;
  if (anchor.empty()) return out;
  out.push_back(anchor);
  out.insert(out.end(), x_chain.begin(), x_chain.end());
  out.insert(out.end(), y_chain.begin(), y_chain.end());
  return out;
}

namespace {

/// Inserts `fresh` into chain (chain[0] is the anchor) by the tail-first
/// backward walk.
void insert_into(std::vector<const SubsurfaceDatum*>& chain, const SubsurfaceDatum& fresh, i64 n, Side side,
                 Mode mode, const RelOptions& opt) {
  for (std::size_t j = chain.size(); j-- > 0;) {
    if (rel(*chain[j], fresh, n, side, mode, opt).holds) {
      chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(j) + 1, &fresh);
      return;
    }
    if (!rel(fresh, *chain[j], n, side, mode, opt).holds)
      fail(ErrorCode::dichotomy, "neither orientation of the " + std::string(side_name(side)) +
                                     "-relation holds between '" + chain[j]->id + "' and '" + fresh.id + "'");
    if (j == 0)
      fail(ErrorCode::dichotomy, "the anchor '" + chain[0]->id + "' does not precede '" + fresh.id + "' on the " +
                                     std::string(side_name(side)) + " side");
  }
}

void record_links(ChainCertificate& cert, const std::vector<const SubsurfaceDatum*>& chain, Side side, i64 n,
                  Mode mode, const RelOptions& opt) {
  for (std::size_t j = 1; j < chain.size(); ++j) {
    const RelationWitness w = rel(*chain[j - 1], *chain[j], n, side, mode, opt);
    if (!w.holds) fail(ErrorCode::internal, "constructed chain link does not hold");
    cert.links.push_back(Link{chain[j - 1]->id, chain[j]->id, side, w.lhs, w.rhs});
  }
}

}  // namespace

ChainCertificate build_chain(const std::vector<SubsurfaceDatum>& collection, i64 n, Mode mode,
                             std::optional<std::string> anchor, const RelOptions& opt) {
  require_cutoff(n, mode);
  check_collection(collection, n, mode);
  ChainCertificate cert;
  cert.cutoff = n;
  cert.mode = mode;
  if (collection.empty()) return cert;

  const auto index = index_of(collection);
  const SubsurfaceDatum* first = nullptr;
  if (anchor) {
    first = &lookup(index, *anchor);
  } else {
    for (const SubsurfaceDatum& z : collection) {
      if (!first) {
        first = &z;
        continue;
      }
      const u128 s = z.i_x + z.i_y;
      const u128 t = first->i_x + first->i_y;
      if (s > t || (s == t && z.id < first->id)) first = &z;
    }
  }
  cert.anchor = first->id;

  std::vector<const SubsurfaceDatum*> x_side{first};
  std::vector<const SubsurfaceDatum*> y_side{first};
  for (const SubsurfaceDatum& z : collection) {
    if (&z == first) continue;
    const auto it = z.cross.find(first->id);
    if (it == z.cross.end())
      fail(ErrorCode::invalid_argument, "'" + z.id + "' does not overlap the anchor '" + first->id + "'");
    const CrossDatum& c = it->second;
    const u128 half = z.d_xy / 2 + z.d_xy % 2;
    if (half <= c.d_from_x) {
      insert_into(x_side, z, n, Side::x, mode, opt);
    } else if (half <= c.d_from_y) {
      insert_into(y_side, z, n, Side::y, mode, opt);
    } else {
      fail(ErrorCode::invalid_argument, "'" + z.id + "' violates the triangle inequality through the anchor");
    }
  }

  for (std::size_t j = 1; j < x_side.size(); ++j) cert.x_chain.push_back(x_side[j]->id);
  for (std::size_t j = 1; j < y_side.size(); ++j) cert.y_chain.push_back(y_side[j]->id);
  record_links(cert, x_side, Side::x, n, mode, opt);
  record_links(cert, y_side, Side::y, n, mode, opt);
  for (const SubsurfaceDatum& z : collection) cert.weights[z.id] = d_weight(z);
  return cert;
}

std::string validate(const ChainCertificate& cert, const std::vector<SubsurfaceDatum>& collection,
                     const RelOptions& opt) {
  try {
    require_cutoff(cert.cutoff, cert.mode);
    const auto index = index_of(collection);
    const std::vector<std::string> ids = cert.ordered_ids();
    if (ids.size() != collection.size()) return "certificate does not cover the collection exactly";
    std::set<std::string> seen;
    for (const std::string& id : ids) {
      if (!index.count(id)) return "certificate names unknown id '" + id + "'";
      if (!seen.insert(id).second) return "certificate repeats id '" + id + "'";
    }
    std::vector<std::pair<std::string, std::string>> expected;
    const auto chain_pairs = [&](const std::vector<std::string>& chain) {
      std::string prev = cert.anchor;
      for (const std::string& id : chain) {
        expected.emplace_back(prev, id);
        prev = id;
      }
    };
    chain_pairs(cert.x_chain);
    chain_pairs(cert.y_chain);
    if (expected.size() != cert.links.size()) return "link count does not match the chains";
    for (std::size_t j = 0; j < expected.size(); ++j) {
      const Link& link = cert.links[j];
      if (link.from != expected[j].first || link.to != expected[j].second) return "link " + std::to_string(j) + " is out of order";
      const Side side = j < cert.x_chain.size() ? Side::x : Side::y;
      if (link.side != side) return "link " + std::to_string(j) + " records the wrong side";
      const RelationWitness w = rel(lookup(index, link.from), lookup(index, link.to), cert.cutoff, side, cert.mode, opt);
      if (!w.holds) return "relation fails from '" + link.from + "' to '" + link.to + "'";
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

Real telescoped_bound(const ChainCertificate& cert, i64 n) {
  if (cert.anchor.empty()) return 0;
  const Real scale = relation_scale(n, cert.mode);
  Real total = 0;
  for (const std::string& id : cert.ordered_ids()) {
    const auto it = cert.weights.find(id);
    if (it == cert.weights.end()) fail(ErrorCode::invalid_argument, "certificate lacks the weight of '" + id + "'");
    total += it->second;
  }
  return total / scale;
}

bool behrstock_validate(u128 d_xy_mu, u128 d_yx_mu) {
  return !(d_xy_mu > static_cast<u128>(constants::kBehrstockFar) &&
           d_yx_mu > static_cast<u128>(constants::kBehrstockNear));
}

std::vector<std::vector<std::string>> partition_overlapping(const std::vector<OverlapItem>& items) {
  std::map<std::string, const OverlapItem*> index;
  for (const OverlapItem& it : items) {
    if (!index.emplace(it.id, &it).second) fail(ErrorCode::invalid_argument, "duplicate id '" + it.id + "'");
  }
  for (const OverlapItem& it : items) {
    for (const std::string& o : it.overlaps) {
      if (o == it.id) fail(ErrorCode::invalid_argument, "overlap relation must be irreflexive ('" + o + "')");
      const auto other = index.find(o);
      if (other == index.end()) fail(ErrorCode::invalid_argument, "unknown id '" + o + "' in overlap relation");
      if (!other->second->overlaps.count(it.id))
        fail(ErrorCode::invalid_argument, "overlap relation is not symmetric between '" + it.id + "' and '" + o + "'");
    }
  }

  // Vertices of the complement graph, colored greedily.
  std::vector<const OverlapItem*> order;
  for (const auto& [id, item] : index) order.push_back(item);
  const std::size_t total = order.size();
  const auto complement_degree = [&](const OverlapItem* v) { return total - 1 - v->overlaps.size(); };
  std::stable_sort(order.begin(), order.end(), [&](const OverlapItem* a, const OverlapItem* b) {
    return complement_degree(a) > complement_degree(b);
  });

  std::vector<std::vector<const OverlapItem*>> classes;
  for (const OverlapItem* v : order) {
    bool placed = false;
    for (auto& cls : classes) {
      const bool clique = std::all_of(cls.begin(), cls.end(), [&](const OverlapItem* w) { return v->overlaps.count(w->id) > 0; });
      if (clique) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({v});
  }

  std::vector<std::vector<std::string>> out;
  for (const auto& cls : classes) {
    std::vector<std::string> ids;
    for (const OverlapItem* v : cls) ids.push_back(v->id);
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  return out;
}

std::vector<OverlapItem> overlap_items(const std::vector<SubsurfaceDatum>& collection) {
  std::vector<OverlapItem> out;
  for (const SubsurfaceDatum& z : collection) {
    OverlapItem item{z.id, {}};
    for (const auto& [other, datum] : z.cross) {
      (void)datum;
      item.overlaps.insert(other);
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<SubsurfaceDatum> farey_dataset(const farey::Slope& x, const farey::Slope& y, i64 n) {
  const std::vector<farey::PivotDatum> pivots = farey::large_annuli(x, y, n);
  std::vector<SubsurfaceDatum> out;
  for (const farey::PivotDatum& p : pivots) {
    SubsurfaceDatum z;
    z.id = p.core.str();
    z.kind = Kind::annular;
    z.d_xy = p.annular_distance;
    z.i_x = farey::intersection(x, p.core);
    z.i_y = farey::intersection(p.core, y);
    out.push_back(std::move(z));
  }
  for (std::size_t a = 0; a < pivots.size(); ++a) {
    for (std::size_t b = 0; b < pivots.size(); ++b) {
      if (a == b) continue;
      const farey::Slope& p = pivots[a].core;
      const farey::Slope& q = pivots[b].core;
      out[a].cross[out[b].id] = CrossDatum{farey::annular_distance(p, x, q), farey::annular_distance(p, q, y),
                                           farey::intersection(p, q)};
    }
  }
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::ordered_json;

u128 count_field(const ordered_json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::parse, std::string("missing field '") + key + "'");
  const ordered_json& v = j.at(key);
  if (v.is_string()) return parse_u128(v.get<std::string>());
  if (v.is_number_unsigned()) return v.get<u64>();
  if (v.is_number_integer() && v.get<i64>() >= 0) return static_cast<u128>(v.get<i64>());
  fail(ErrorCode::parse, std::string("field '") + key + "' must be a nonnegative integer or decimal string");
}

std::string string_field(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) fail(ErrorCode::parse, std::string("missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

}  // namespace

std::vector<SubsurfaceDatum> parse_collection(const ordered_json& j) {
  try {
    const ordered_json* records = &j;
    if (j.is_object()) {
      if (j.contains("schema") && j.at("schema") != kSchema)
        fail(ErrorCode::parse, "unsupported chains schema " + j.at("schema").dump());
      if (!j.contains("subsurfaces")) fail(ErrorCode::parse, "missing 'subsurfaces' array");
      records = &j.at("subsurfaces");
    }
    if (!records->is_array()) fail(ErrorCode::parse, "subsurface records must form an array");
    std::vector<SubsurfaceDatum> out;
    for (const ordered_json& r : *records) {
      SubsurfaceDatum z;
      z.id = string_field(r, "id");
      z.kind = parse_kind(string_field(r, "kind"));
      z.d_xy = count_field(r, "d_xy");
      z.i_x = count_field(r, "i_x");
      z.i_y = count_field(r, "i_y");
      if (r.contains("cross")) {
        if (!r.at("cross").is_object()) fail(ErrorCode::parse, "'cross' must be an object keyed by id");
        for (const auto& [other, c] : r.at("cross").items()) {
          z.cross[other] = CrossDatum{count_field(c, "d_from_x"), count_field(c, "d_from_y"), count_field(c, "i_between")};
        }
      }
      out.push_back(std::move(z));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, e.what());
  }
}

ordered_json collection_json(const std::vector<SubsurfaceDatum>& collection) {
  ordered_json records = ordered_json::array();
  for (const SubsurfaceDatum& z : collection) {
    ordered_json r;
    r["id"] = z.id;
    r["kind"] = kind_name(z.kind);
    r["d_xy"] = to_decimal(z.d_xy);
    r["i_x"] = to_decimal(z.i_x);
    r["i_y"] = to_decimal(z.i_y);
    ordered_json cross = ordered_json::object();
    for (const auto& [other, c] : z.cross) {
      cross[other] = {{"d_from_x", to_decimal(c.d_from_x)},
                      {"d_from_y", to_decimal(c.d_from_y)},
                      {"i_between", to_decimal(c.i_between)}};
    }
    r["cross"] = std::move(cross);
    records.push_back(std::move(r));
  }
  return ordered_json{{"schema", kSchema}, {"subsurfaces", std::move(records)}};
}

ordered_json certificate_json(const ChainCertificate& cert) {
  ordered_json links = ordered_json::array();
  for (const Link& l : cert.links) {
    links.push_back({{"from", l.from}, {"to", l.to}, {"side", side_name(l.side)},
                     {"lhs", format_real(l.lhs)}, {"rhs", format_real(l.rhs)}});
  }
  ordered_json weights = ordered_json::object();
  for (const auto& [id, w] : cert.weights) weights[id] = format_real(w);
  return ordered_json{{"schema", kSchema},
                      {"cutoff", cert.cutoff},
                      {"mode", mode_name(cert.mode)},
                      {"anchor", cert.anchor},
                      {"x_chain", cert.x_chain},
                      {"y_chain", cert.y_chain},
                      {"links", std::move(links)},
                      {"weights", std::move(weights)}};
}

ordered_json partition_json(const std::vector<std::vector<std::string>>& parts) {
  return ordered_json{{"schema", kSchema}, {"collections", parts}, {"count", parts.size()}};
}

}  // namespace curvebound::chains
