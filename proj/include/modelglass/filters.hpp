#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modelglass {

/// A subset of a base {0..b-1}, b <= 64, as a bit pattern.
using Subset = std::uint64_t;

Subset full_subset(std::size_t base);
std::vector<std::size_t> subset_elements(Subset s);
std::string format_subset(Subset s);

/// Subsets of a finite base. Members are kept sorted and distinct.
class SetFamily {
 public:
  SetFamily() = default;
  SetFamily(std::size_t base, std::vector<Subset> members);

  std::size_t base() const noexcept { return base_; }
  const std::vector<Subset>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Subset s) const;

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

 private:
  std::size_t base_ = 0;
  std::vector<Subset> members_;
};

struct FilterCheck {
  bool ok = true;
  /// Which condition failed: "empty family", "contains the empty set",
  /// "not closed under intersection" or "not upward closed".
  std::string violation;
  /// The sets that exhibit the failure.
  std::vector<Subset> witness;
};

struct FilterOptions {
  /// Largest base for which a generated filter (all supersets of a set) is
  /// materialized or ultrafilters enumerated.
  std::size_t max_base = 12;
  /// Largest family materialized by generated_filter.
  std::size_t max_members = std::size_t{1} << 20;
};

/// Upward closed, closed under pairwise intersection, without the empty set,
/// and nonempty.
FilterCheck is_filter(const SetFamily& family);

/// Every A in the base, or its complement, is a member. False for anything
/// that is not a filter.
bool is_ultrafilter(const SetFamily& family);

/// All supersets of the intersection of the generators. Throws if some
/// generators have empty intersection, naming a minimal such subfamily.
SetFamily generated_filter(const SetFamily& generators, const FilterOptions& options = {});

SetFamily principal_filter(std::size_t base, Subset core, const FilterOptions& options = {});
SetFamily principal_ultrafilter(std::size_t base, std::size_t point, const FilterOptions& options = {});

/// On a finite base these are exactly the principal ultrafilters.
std::vector<SetFamily> enumerate_ultrafilters(std::size_t base, const FilterOptions& options = {});

/// Intersection of all members; the base for an empty family.
Subset limit_points(const SetFamily& family);

/// `{{2,3},{3,4}} over 5`. Without `over`, the base is one past the
/// largest element mentioned.
SetFamily parse_family(std::string_view text);
std::string format_family(const SetFamily& family);

}  // namespace modelglass
