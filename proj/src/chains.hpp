#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "farey.hpp"

namespace curvebound::chains {

enum class Kind { annular, nonannular };
enum class Mode { annular, mixed };
enum class Side { x, y };

std::string_view kind_name(Kind k);
std::string_view mode_name(Mode m);
std::string_view side_name(Side s);
Mode parse_mode(std::string_view name);

/// Quantities measured in Z_p against an overlapping partner Z_q.
struct CrossDatum {
  u128 d_from_x = 0;  // d_{Z_p}(x, boundary of Z_q)
  u128 d_from_y = 0;  // d_{Z_p}(boundary of Z_q, y)
  u128 i_between = 0;
};

struct SubsurfaceDatum {
  std::string id;
  Kind kind = Kind::annular;
  u128 d_xy = 0;
  u128 i_x = 0;
  u128 i_y = 0;
  std::map<std::string, CrossDatum> cross;
};

/// log2 d for annuli, d otherwise.
Real d_weight(const SubsurfaceDatum& z);

struct RelOptions {
  Real tolerance = 1e-12L;
};

struct RelationWitness {
  bool holds;
  Real lhs;  // D(q) / (2 f) + log i_side(q)
  Real rhs;  // log i_side(p)
};

/// The relation p < q seen from one side of the pair, with f = l or L at
/// ceil((n+1)/2).
RelationWitness rel(const SubsurfaceDatum& p, const SubsurfaceDatum& q, i64 n, Side side, Mode mode,
                    const RelOptions& opt = {});
Real relation_scale(i64 n, Mode mode);

struct Link {
  std::string from;
  std::string to;
  Side side;
  Real lhs;
  Real rhs;
};

struct ChainCertificate {
  std::string anchor;
  std::vector<std::string> x_chain;  // anchor excluded, in chain order
  std::vector<std::string> y_chain;
  std::vector<Link> links;
  std::map<std::string, Real> weights;
  i64 cutoff = 0;
  Mode mode = Mode::annular;

  std::vector<std::string> ordered_ids() const;
  std::size_t size() const { return anchor.empty() ? 0 : 1 + x_chain.size() + y_chain.size(); }
};

ChainCertificate build_chain(const std::vector<SubsurfaceDatum>& collection, i64 n, Mode mode,
                             std::optional<std::string> anchor = std::nullopt, const RelOptions& opt = {});

/// Empty string when valid; otherwise the first violated condition.
std::string validate(const ChainCertificate& cert, const std::vector<SubsurfaceDatum>& collection,
                     const RelOptions& opt = {});

/// Sum of D-weights over 2 l (or 2 L) at ceil((n+1)/2).
Real telescoped_bound(const ChainCertificate& cert, i64 n);

/// Fails only when d_X(Y, mu) > 9 and d_Y(X, mu) > 4.
bool behrstock_validate(u128 d_xy_mu, u128 d_yx_mu);

struct OverlapItem {
  std::string id;
  std::set<std::string> overlaps;
};
std::vector<std::vector<std::string>> partition_overlapping(const std::vector<OverlapItem>& items);
std::vector<OverlapItem> overlap_items(const std::vector<SubsurfaceDatum>& collection);

/// Annuli of Z(x, y, n) from the Farey model with exact data.
std::vector<SubsurfaceDatum> farey_dataset(const farey::Slope& x, const farey::Slope& y, i64 n);

inline constexpr const char* kSchema = "curvebound.chains/1";
std::vector<SubsurfaceDatum> parse_collection(const nlohmann::ordered_json& j);
nlohmann::ordered_json collection_json(const std::vector<SubsurfaceDatum>& collection);
nlohmann::ordered_json certificate_json(const ChainCertificate& cert);
nlohmann::ordered_json partition_json(const std::vector<std::vector<std::string>>& parts);

}  // namespace curvebound::chains
