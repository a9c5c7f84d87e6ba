#include "modelglass/filters.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "modelglass/error.hpp"

namespace modelglass {

Subset full_subset(std::size_t base) {
  if (base > 64) throw CapExceeded("base of size " + std::to_string(base) + " exceeds 64");
  return base == 64 ? ~Subset{0} : (Subset{1} << base) - 1;
}

std::vector<std::size_t> subset_elements(Subset s) {
  std::vector<std::size_t> out;
  while (s != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::string format_subset(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : subset_elements(s)) {
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

SetFamily::SetFamily(std::size_t base, std::vector<Subset> members) : base_(base), members_(std::move(members)) {
  const Subset full = full_subset(base);
  for (Subset s : members_) {
    if ((s & ~full) != 0) throw Error("member " + format_subset(s) + " is not a subset of the base");
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool SetFamily::contains(Subset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

FilterCheck is_filter(const SetFamily& family) {
  FilterCheck check;
  auto fail = [&](std::string what, std::vector<Subset> witness) {
    check.ok = false;
    check.violation = std::move(what);
    check.witness = std::move(witness);
    return check;
  };
  if (family.size() == 0) return fail("empty family", {});
  if (family.contains(0)) return fail("contains the empty set", {0});
  const auto& m = family.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!family.contains(m[i] & m[j])) return fail("not closed under intersection", {m[i], m[j]});
    }
  }
  // Adding one point at a time reaches every superset.
  const Subset full = full_subset(family.base());
  for (Subset a : m) {
    for (Subset rest = full & ~a; rest != 0; rest &= rest - 1) {
      Subset bigger = a | (rest & -rest);
      if (!family.contains(bigger)) return fail("not upward closed", {a, bigger});
    }
  }
  return check;
}

bool is_ultrafilter(const SetFamily& family) {
  if (!is_filter(family).ok) return false;
  // A filter on a finite base is principal at its limit set; it is maximal
  // exactly when that set is a single point.
  return std::popcount(limit_points(family)) == 1;
}

Subset limit_points(const SetFamily& family) {
  Subset core = full_subset(family.base());
  for (Subset s : family.members()) core &= s;
  return core;
}

SetFamily principal_filter(std::size_t base, Subset core, const FilterOptions& options) {
  if (core == 0) throw Error("a filter cannot contain the empty set");
  const Subset full = full_subset(base);
  if ((core & ~full) != 0) throw Error("generator is not a subset of the base");
  const Subset free = full & ~core;
  const int free_count = std::popcount(free);
  if (free_count >= 63 || (std::size_t{1} << free_count) > options.max_members) {
    throw CapExceeded("filter would have 2^" + std::to_string(free_count) + " members");
  }
  std::vector<Subset> members;
  members.reserve(std::size_t{1} << free_count);
  // Enumerate the subsets of `free` and add the core to each.
  Subset extra = 0;
  do {
    members.push_back(core | extra);
    extra = (extra - free) & free;
  } while (extra != 0);
  return SetFamily(base, std::move(members));
}

SetFamily principal_ultrafilter(std::size_t base, std::size_t point, const FilterOptions& options) {
  if (point >= base) throw Error("point " + std::to_string(point) + " is outside the base");
  return principal_filter(base, Subset{1} << point, options);
}

SetFamily generated_filter(const SetFamily& generators, const FilterOptions& options) {
  const auto& gens = generators.members();
  Subset core = limit_points(generators);
  if (core == 0) {
    // Shrink to a minimal subfamily that still has empty intersection.
    std::vector<Subset> culprit = gens;
    for (std::size_t i = culprit.size(); i-- > 0;) {
      Subset without = full_subset(generators.base());
      for (std::size_t j = 0; j < culprit.size(); ++j) {
        if (j != i) without &= culprit[j];
      }
      if (without == 0) culprit.erase(culprit.begin() + static_cast<std::ptrdiff_t>(i));
    }
    std::string names;
    for (Subset s : culprit) names += (names.empty() ? "" : ", ") + format_subset(s);
    throw Error("generators lack the finite intersection property: " + names + " have empty intersection");
  }
  return principal_filter(generators.base(), core, options);
}

std::vector<SetFamily> enumerate_ultrafilters(std::size_t base, const FilterOptions& options) {
  if (base == 0) throw Error("the base must be nonempty");
  if (base > options.max_base) {
    throw CapExceeded("base of size " + std::to_string(base) + " exceeds the ultrafilter cap of " +
                      std::to_string(options.max_base));
  }
  std::vector<SetFamily> out;
  for (std::size_t p = 0; p < base; ++p) out.push_back(principal_ultrafilter(base, p, options));
  return out;
}

namespace {

class FamilyReader {
 public:
  explicit FamilyReader(std::string_view text) : text_(text) {}

  SetFamily read() {
    std::vector<Subset> members;
    std::size_t largest = 0;
    bool any_element = false;
    expect('{');
    skip();
    if (peek() != '}') {
      while (true) {
        expect('{');
        Subset s = 0;
        skip();
        if (peek() != '}') {
          while (true) {
            std::size_t e = number();
            if (e >= 64) fail("element " + std::to_string(e) + " exceeds 63");
            s |= Subset{1} << e;
            largest = std::max(largest, e);
            any_element = true;
            skip();
            if (peek() == ',') {
              ++pos_;
              continue;
            }
            break;
          }
        }
        expect('}');
        members.push_back(s);
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect('}');
    skip();
    std::size_t base = any_element ? largest + 1 : 0;
    if (pos_ < text_.size()) {
      if (text_.substr(pos_, 4) != "over") fail("expected 'over'");
      pos_ += 4;
      skip();
      base = number();
      skip();
      if (base <= largest && any_element) fail("base " + std::to_string(base) + " does not contain every element");
    }
    if (pos_ != text_.size()) fail("trailing input");
    if (base > 64) fail("base exceeds 64");
    return SetFamily(base, std::move(members));
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::size_t number() {
    skip();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetFamily parse_family(std::string_view text) { return FamilyReader(text).read(); }

std::string format_family(const SetFamily& family) {
  std::string out = "{";
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (i > 0) out += ",";
    out += format_subset(family.members()[i]);
  }
  return out + "} over " + std::to_string(family.base());
}

}  // namespace modelglass
