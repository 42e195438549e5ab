#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "essdim/field.hpp"
#include "essdim/group.hpp"
#include "json.hpp"

namespace essdim {

// Closed integer interval; upper empty means unknown.
struct Bounds {
  long lower = 0;
  std::optional<long> upper;
  bool exact() const { return upper && *upper == lower; }
  bool operator==(const Bounds&) const = default;
};

// Shift both ends by delta (the rank corrections of the transfer rules).
Bounds shifted(const Bounds& b, long delta);

// edim G − rk Z(G,k) = edim Q − rk Z(Q,k): bounds of one side from the other.
Bounds central_transfer(const Bounds& from, int rk_from, int rk_to);

// ------------------------------------------------------------------ facts

struct Fact {
  std::string group;  // invariant fingerprint
  std::string field;  // canonical field; bare "char=p" matches any field of char p
  long lower = 0;
  std::optional<long> upper;
  std::string source;
};

// Literature inputs keyed by (group fingerprint, field). Adding a fact for a
// known key intersects the intervals; an empty intersection is FactConflict.
class FactStore {
 public:
  void add(const Fact& f);
  // All facts that apply to (group, field), intersected; nullopt if none.
  std::optional<Fact> lookup(const std::string& fingerprint, const FieldDescriptor& f) const;
  // [{"group": fingerprint | group file | group name, "field", "lower",
  //   "upper", "source"}]; relative file names resolve against base_dir.
  static FactStore from_json(const nlohmann::json& j, const std::string& base_dir = ".");
  static FactStore load(const std::string& path);
  void merge(const FactStore& other);
  nlohmann::json to_json() const;
  bool empty() const { return facts_.empty(); }
  std::size_t size() const { return facts_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, Fact> facts_;
};

// ----------------------------------------------------------------- engine

struct TraceEntry {
  std::string rule;      // "R1".."R11"
  std::string citation;  // the result the rule applies
  nlohmann::json inputs;
  Bounds produced;       // the bound the rule proposes for G
  bool tightened = false;
};

struct EdimResult {
  Bounds bounds;
  std::vector<TraceEntry> trace;
  FieldDescriptor field;
  std::string group_label;
  std::string fingerprint;
  // Never merged into the bounds.
  std::optional<long> conjectural_value;

  long lower() const { return bounds.lower; }
  std::optional<long> upper() const { return bounds.upper; }
  bool exact() const { return bounds.exact(); }
  nlohmann::json to_json() const;
};

struct EdimOptions {
  // Extra subgroups for the subgroup rule, as generator lists.
  std::vector<std::vector<Elem>> subgroups;
  // Every subgroup (up to a size cap) rather than the cyclic ones.
  bool full_subgroups = false;
  // How deep the rules may recurse into quotients, factors and subgroups.
  int max_depth = 3;
  // Skip the subgroup rule for automatic enumeration above this order.
  std::size_t subgroup_order_cap = 5000;
};

EdimResult edim(const FiniteGroup& g, const FieldDescriptor& f, const FactStore& facts = {},
                const EdimOptions& opt = {});

// covdim = edim when Z(G,k) ≠ 1, else edim + 1. Errors: NotSemiFaithful.
EdimResult covdim(const FiniteGroup& g, const FieldDescriptor& f, const FactStore& facts = {},
                  const EdimOptions& opt = {});

// dim V − Σ_p rk C(p) + rk C for a central socle C with V_p minimal among
// representations faithful on C(p). Conditional on the splitting of the
// canonical dimension over primes; its ≤ direction holds unconditionally.
struct ConjecturalEdim {
  long value = 0;
  long dim_v = 0;
  std::map<long, long> dim_v_p;  // prime -> dim V_p
  std::map<long, int> rank_c_p;  // prime -> rk C(p)
  int rank_c = 0;
};
// Errors: HypothesisFailed (socle not central, missing ζ_p, splitting,
// gcd ≠ min for a prime-order character).
ConjecturalEdim conjectural_edim(const FiniteGroup& g, const FieldDescriptor& f);

}  // namespace essdim
