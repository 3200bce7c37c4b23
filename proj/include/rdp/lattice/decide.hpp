#pragma once

#include <set>
#include <string>

#include "rdp/lattice/subsystems.hpp"

namespace rdp {

struct ConditionFlags {
  bool e8 = false;      // (E8)
  bool t_ell2 = false;  // (E8+T[l=2])
  bool t_p = false;     // (E8+T[p]); equals e8 for p = 0
};

/// Existential over the enumerated classes of the given type.
inline auto check_conditions(const AdeType &type, std::uint64_t p) -> ConditionFlags {
  ConditionFlags f;
  for (auto &c : classes_of_type(type)) {
    f.e8 = true;
    f.t_ell2 = f.t_ell2 || c.flag_T_ell(2);
    f.t_p = f.t_p || c.flag_T_p(static_cast<std::int64_t>(p));
  }
  return f;
}

enum class Witness { Yes, No, OnlyDegree2 };

inline auto witness_name(Witness w) -> std::string {
  switch (w) {
  case Witness::Yes: return "yes";
  case Witness::No: return "no";
  case Witness::OnlyDegree2: return "only-degree-2";
  }
  return "";
}

struct Occurrence {
  bool occurs = false;
  Witness degree1_witness = Witness::No;
  std::string rationale;
};

/// Configurations listed in the equation tables for one characteristic, by
/// their printed form, split by whether a degree-1 equation exists.
struct CatalogMembership {
  std::set<std::string> degree1;
  std::set<std::string> degree2_only;

  [[nodiscard]] auto contains(const std::string &c) const -> bool {
    return degree1.count(c) || degree2_only.count(c);
  }
};

/// Whether an RDP configuration occurs on an RDP del Pezzo surface in
/// characteristic p. Non-taut configurations in characteristic 2 are decided
/// by catalog membership, which must then be supplied; in characteristics 3
/// and 5 the catalog, when supplied, is cross-checked against the lattice.
inline auto decide_occurrence(const RdpConfiguration &config, const CatalogMembership *catalog = nullptr)
    -> Occurrence {
  config.validate();
  const std::uint64_t p = config.characteristic();
  const AdeType lat = config.lattice();
  const ConditionFlags f = check_conditions(lat, p);
  const std::string name = config.to_string();
  Occurrence o;
  if (p != 2) {
    o.occurs = f.t_ell2;
    o.degree1_witness = o.occurs ? Witness::Yes : Witness::No;
    o.rationale = !f.e8 ? "does not embed into E8" : (f.t_ell2 ? "satisfies E8+T[l=2]" : "violates E8+T[l=2]");
    if (catalog && config.has_non_taut_summand() && catalog->contains(name) != o.occurs)
      throw Error("internal: lattice criterion and catalog disagree on " + name + " in characteristic " +
                  std::to_string(p));
    return o;
  }
  if (!config.has_non_taut_summand()) {
    static const std::set<std::string> excluded{"2A3+2A1", "A3+4A1", "6A1"};
    o.occurs = f.e8 && !excluded.count(lat.to_string());
    if (!o.occurs) {
      o.degree1_witness = Witness::No;
      o.rationale = !f.e8 ? "does not embed into E8" : "excluded lattice in characteristic 2";
    } else if (f.t_p) {
      o.degree1_witness = Witness::Yes;
      o.rationale = "satisfies E8+T[p=2]";
    } else {
      o.degree1_witness = Witness::OnlyDegree2;
      o.rationale = "violates E8+T[p=2]; degree 2 only";
    }
    return o;
  }
  if (!catalog) throw Error("catalog membership required for non-taut configurations in characteristic 2");
  if (catalog->degree1.count(name)) {
    o.occurs = true;
    o.degree1_witness = Witness::Yes;
    o.rationale = "listed in the equation tables";
  } else if (catalog->degree2_only.count(name)) {
    o.occurs = true;
    o.degree1_witness = Witness::OnlyDegree2;
    o.rationale = "listed as degree 2 only";
  } else {
    o.occurs = false;
    o.degree1_witness = Witness::No;
    o.rationale = "not listed in the equation tables";
  }
  return o;
}

} // namespace rdp
