#pragma once

// Integer co-array algebra and sparse-array geometry.
//
// Positions are integers in units of half a wavelength. A LagSet is a finite
// set of integers (sensor positions or co-array lags) backed by a dense
// bitmap over [min, max], so membership is O(1) and all set operations stay
// exact.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rasdoa {

class LagSet {
 public:
  LagSet() = default;
  LagSet(std::initializer_list<int> values);
  explicit LagSet(const std::vector<int>& values);

  [[nodiscard]] bool contains(int value) const noexcept;
  [[nodiscard]] bool empty() const noexcept { return count_ == 0; }
  [[nodiscard]] std::size_t size() const noexcept { return count_; }
  // Precondition: !empty().
  [[nodiscard]] int min() const noexcept { return offset_; }
  [[nodiscard]] int max() const noexcept { return offset_ + static_cast<int>(bits_.size()) - 1; }

  // Sorted ascending.
  [[nodiscard]] std::vector<int> members() const;

  // mask[i] != 0 marks offset + i as a member.
  [[nodiscard]] static LagSet from_mask(int offset, std::vector<std::uint8_t> mask);

  friend bool operator==(const LagSet& a, const LagSet& b) { return a.members() == b.members(); }

 private:
  int offset_ = 0;
  std::vector<std::uint8_t> bits_;
  std::size_t count_ = 0;
};

// Consecutive integer interval [lo, hi].
struct Segment {
  int lo = 0;
  int hi = 0;

  [[nodiscard]] int count() const noexcept { return hi - lo + 1; }
  [[nodiscard]] bool contains(int v) const noexcept { return lo <= v && v <= hi; }
  [[nodiscard]] bool contains(const Segment& s) const noexcept { return lo <= s.lo && s.hi <= hi; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

enum class Family { NA, SNA, RASNA, CPA, RASCPA };

[[nodiscard]] std::string_view to_string(Family f) noexcept;
// Accepts the canonical names above, case-insensitive, with optional '-'
// (e.g. "RAS-NA"). Throws InvalidParameters otherwise.
[[nodiscard]] Family parse_family(std::string_view name);

[[nodiscard]] bool is_nested_family(Family f) noexcept;

struct GeometrySpec {
  Family family = Family::NA;
  int N = 1;
  int M = 1;

  // α = M(N+1)-1 for SNA/RASNA, β = (2N-1)M for RASCPA, 0 otherwise.
  [[nodiscard]] int shift() const noexcept;
  // Number of physical sensors the family uses for (N, M).
  [[nodiscard]] int sensor_count() const noexcept;
  // e.g. "RASNA(4,4)".
  [[nodiscard]] std::string name() const;

  // Throws InvalidParameters when the family's constraints do not hold.
  void validate() const;

  friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

class SensorArray {
 public:
  // Throws InvalidParameters unless positions are nonempty, non-negative
  // and distinct. Positions are sorted on construction.
  explicit SensorArray(std::vector<int> positions, std::optional<GeometrySpec> spec = std::nullopt);

  [[nodiscard]] const std::vector<int>& positions() const noexcept { return positions_; }
  [[nodiscard]] const std::optional<GeometrySpec>& spec() const noexcept { return spec_; }
  [[nodiscard]] std::size_t size() const noexcept { return positions_.size(); }
  [[nodiscard]] int aperture() const noexcept { return positions_.back(); }
  [[nodiscard]] LagSet as_set() const { return LagSet(positions_); }

 private:
  std::vector<int> positions_;
  std::optional<GeometrySpec> spec_;
};

// Set algebra.
[[nodiscard]] LagSet sum_set(const LagSet& p, const LagSet& q);
[[nodiscard]] LagSet diff_set(const LagSet& p, const LagSet& q);
[[nodiscard]] LagSet translate(int c, const LagSet& p);
[[nodiscard]] LagSet negate(const LagSet& p);
[[nodiscard]] LagSet set_union(const LagSet& a, const LagSet& b);

// max(P) - P. The result carries no GeometrySpec.
[[nodiscard]] SensorArray reverse(const SensorArray& p);

[[nodiscard]] SensorArray build_geometry(const GeometrySpec& spec);

// P - P, P + P, and the difference-and-sum co-array (P+P) ∪ -(P+P) ∪ (P-P).
[[nodiscard]] LagSet dca(const SensorArray& p);
[[nodiscard]] LagSet sca(const SensorArray& p);
[[nodiscard]] LagSet dsca(const SensorArray& p);

// Maximal consecutive run of L that contains 0. Throws MissingZero.
[[nodiscard]] Segment central_segment(const LagSet& l);
// Longest consecutive run anywhere in L (leftmost on ties). Precondition: nonempty.
[[nodiscard]] Segment longest_run(const LagSet& l);
// Whether every integer of s is a member of l.
[[nodiscard]] bool covers(const LagSet& l, const Segment& s);

// Central DSCA count of a geometry, by enumeration.
[[nodiscard]] int consecutive_dsca_count(const SensorArray& p);

// Closed-form consecutive DSCA count: 4MN+4M-3 for RASNA, and
// 8MN-4M-2N(N-1)+1 for RASCPA with M-N=1. Throws UnsupportedFamily or
// HypothesisViolation otherwise.
[[nodiscard]] int predicted_count(const GeometrySpec& spec);
[[nodiscard]] bool has_prediction(const GeometrySpec& spec) noexcept;

// Consecutive part of the CPA sum co-array for co-prime N, M with M-N=1:
// [(N-1)N, 2N+(2N-1)M]. The upper end equals (2N-1)(M+1)+1.
[[nodiscard]] Segment prop1_segment(int N, int M);
// Consecutive part of the RAS-CPA DSCA for M-N=1:
// ±(4MN-2M-N(N-1)).
[[nodiscard]] Segment prop2_segment(int N, int M);

// The (N, M) for T sensors that maximises the enumerated central DSCA
// count; ties go to smaller M, then smaller N. The CPA families are
// restricted to M = N+1. Throws NoValidSplit.
[[nodiscard]] GeometrySpec best_split(int T, Family family);

}  // namespace rasdoa
