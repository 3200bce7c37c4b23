#pragma once

#include <map>
#include <mutex>
#include <string>

#include "rdp/singularity/blowup.hpp"
#include "rdp/singularity/normal_forms.hpp"

namespace rdp {

/// Resolution shapes and Tjurina numbers of the normal forms in one
/// characteristic. Built once per p; construction fails loudly if two types
/// share a shape or two classes share (shape, m).
class RdpCalibration {
public:
  static auto get(std::uint64_t p) -> const RdpCalibration & {
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<RdpCalibration>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[p];
    if (!slot) slot.reset(new RdpCalibration(p));
    return *slot;
  }

  struct Entry {
    RdpClass cls;
    std::string shape;
    unsigned m = 0;
  };

  [[nodiscard]] auto entries() const -> const std::vector<Entry> & { return entries_; }
  [[nodiscard]] auto max_m() const -> unsigned { return max_m_; }
  [[nodiscard]] auto type_of_shape(const std::string &s) const -> const AdeComponent * {
    auto it = shape_.find(s);
    return it == shape_.end() ? nullptr : &it->second;
  }
  [[nodiscard]] auto taut_m(const AdeComponent &t) const -> std::optional<unsigned> {
    for (auto &e : entries_)
      if (e.cls.type == t && is_taut(t, p_)) return e.m;
    return std::nullopt;
  }

private:
  explicit RdpCalibration(std::uint64_t p) : p_(p) {
    const Field &F = Field::get(p);
    auto forms = taut_forms(p);
    for (auto &n : non_taut_forms(p)) forms.push_back(n);
    std::map<std::pair<std::string, unsigned>, RdpClass> seen;
    for (auto &n : forms) {
      const MPoly f = n.polynomial(F);
      const auto tree = BlowupTree::build({f, kRootPrecision});
      Entry e{n.cls, tree.shape(), tjurina_dimension(f).m};
      if (n.m && *n.m != e.m)
        throw Error("internal: Tjurina number of " + rdp_name(n.cls, p) + " differs from the table");
      auto [it, fresh] = shape_.emplace(e.shape, n.cls.type);
      if (!fresh && !(it->second == n.cls.type))
        throw Error("internal: " + it->second.name() + " and " + n.cls.type.name() + " share a resolution shape");
      if (!seen.emplace(std::make_pair(e.shape, e.m), n.cls).second)
        throw Error("internal: two classes of " + n.cls.type.name() + " share a Tjurina number");
      max_m_ = std::max(max_m_, e.m);
      entries_.push_back(std::move(e));
    }
  }

  std::uint64_t p_;
  std::vector<Entry> entries_;
  std::map<std::string, AdeComponent> shape_;
  unsigned max_m_ = 0;
};

struct RdpVerdict {
  RdpClass cls;
  unsigned m = 0;
  BlowupTree tree;
};

/// Class of the isolated surface singularity f = 0 at the origin, for an
/// exact (untruncated) polynomial f in three variables. The type comes from
/// the resolution shape; a type known from elsewhere (a Kodaira fiber) is
/// cross-checked against it. The coindex comes from the Tjurina dimension.
inline auto classify_rdp(const MPoly &f, std::optional<AdeComponent> known_type = std::nullopt) -> RdpVerdict {
  const std::uint64_t p = f.field().characteristic();
  const auto &cal = RdpCalibration::get(p);
  if (f.order() >= 3) throw Error("not a rational double point");
  RdpVerdict v;
  try {
    v.m = tjurina_dimension(f).m;
  } catch (const Error &e) {
    if (std::string(e.what()).rfind("internal", 0) == 0) throw;
    throw Error("not a rational double point");
  }
  if (v.m > cal.max_m()) throw Error("not a rational double point");
  v.tree = BlowupTree::build({f, kRootPrecision});
  const AdeComponent *type = cal.type_of_shape(v.tree.shape());
  if (!type) throw Error("not a rational double point");
  if (known_type && !(*known_type == *type))
    throw Error("resolution gives " + type->name() + " where the fiber gives " + known_type->name());
  if (is_taut(*type, p)) {
    if (cal.taut_m(*type) != v.m) throw Error("inconsistent singularity data");
    v.cls = {*type, 0};
    return v;
  }
  auto k = coindex_from_m(*type, v.m, p);
  if (!k) throw Error("inconsistent singularity data");
  v.cls = {*type, *k};
  return v;
}

} // namespace rdp
