#include "rasdoa/coarray.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "rasdoa/errors.hpp"

namespace rasdoa {

namespace {

constexpr int kMaxParameter = 4096;

std::vector<std::uint8_t> empty_mask(int lo, int hi) {
  return std::vector<std::uint8_t>(static_cast<std::size_t>(hi - lo + 1), 0);
}

}  // namespace

// ---------------------------------------------------------------------------
// LagSet

LagSet::LagSet(std::initializer_list<int> values) : LagSet(std::vector<int>(values)) {}

LagSet::LagSet(const std::vector<int>& values) {
  if (values.empty()) return;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<std::uint8_t> mask = empty_mask(*lo, *hi);
  for (int v : values) mask[static_cast<std::size_t>(v - *lo)] = 1;
  *this = from_mask(*lo, std::move(mask));
}

LagSet LagSet::from_mask(int offset, std::vector<std::uint8_t> mask) {
  // Trim so that min() and max() are always members.
  std::size_t first = 0;
  while (first < mask.size() && mask[first] == 0) ++first;
  if (first == mask.size()) return {};
  std::size_t last = mask.size() - 1;
  while (mask[last] == 0) --last;

  LagSet out;
  out.offset_ = offset + static_cast<int>(first);
  out.bits_.assign(mask.begin() + static_cast<std::ptrdiff_t>(first),
                   mask.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  out.count_ = static_cast<std::size_t>(std::count_if(out.bits_.begin(), out.bits_.end(),
                                                      [](std::uint8_t b) { return b != 0; }));
  return out;
}

bool LagSet::contains(int value) const noexcept {
  if (bits_.empty() || value < offset_) return false;
  const auto idx = static_cast<std::size_t>(value - offset_);
  return idx < bits_.size() && bits_[idx] != 0;
}

std::vector<int> LagSet::members() const {
  std::vector<int> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] != 0) out.push_back(offset_ + static_cast<int>(i));
  return out;
}

// ---------------------------------------------------------------------------
// Families and specs

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::NA: return "NA";
    case Family::SNA: return "SNA";
    case Family::RASNA: return "RASNA";
    case Family::CPA: return "CPA";
    case Family::RASCPA: return "RASCPA";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (Family f : {Family::NA, Family::SNA, Family::RASNA, Family::CPA, Family::RASCPA})
    if (key == to_string(f)) return f;
  throw InvalidParameters("unknown array family '" + std::string(name) + "'");
}

bool is_nested_family(Family f) noexcept {
  return f == Family::NA || f == Family::SNA || f == Family::RASNA;
}

int GeometrySpec::shift() const noexcept {
  switch (family) {
    case Family::SNA:
    case Family::RASNA: return M * (N + 1) - 1;
    case Family::RASCPA: return (2 * N - 1) * M;
    default: return 0;
  }
}

int GeometrySpec::sensor_count() const noexcept {
  switch (family) {
    case Family::NA:
    case Family::RASNA: return N + M;
    case Family::SNA: return N + M + 1;
    case Family::CPA:
    case Family::RASCPA: return 2 * N + M - 1;
  }
  return 0;
}

std::string GeometrySpec::name() const {
  return std::string(to_string(family)) + "(" + std::to_string(N) + "," + std::to_string(M) + ")";
}

void GeometrySpec::validate() const {
  if (N < 1 || M < 1)
    throw InvalidParameters(name() + ": N and M must be positive");
  if (N > kMaxParameter || M > kMaxParameter)
    throw InvalidParameters(name() + ": N and M must not exceed " + std::to_string(kMaxParameter));
  if (family == Family::CPA || family == Family::RASCPA) {
    if (std::gcd(N, M) != 1) throw InvalidParameters(name() + ": N and M must be co-prime");
    if (N >= M) throw InvalidParameters(name() + ": co-prime arrays need N < M");
  }
  if (family == Family::SNA && (M * (N + 1)) % 2 != 0)
    throw InvalidParameters(name() + ": shifted nested array needs M(N+1) even");
}

// ---------------------------------------------------------------------------
// SensorArray

SensorArray::SensorArray(std::vector<int> positions, std::optional<GeometrySpec> spec)
    : positions_(std::move(positions)), spec_(spec) {
  if (positions_.empty()) throw InvalidParameters("sensor array must not be empty");
  std::sort(positions_.begin(), positions_.end());
  if (positions_.front() < 0) throw InvalidParameters("sensor positions must be non-negative");
  if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end())
    throw InvalidParameters("sensor positions must be distinct");
}

// ---------------------------------------------------------------------------
// Set algebra

LagSet sum_set(const LagSet& p, const LagSet& q) {
  if (p.empty() || q.empty()) return {};
  const int lo = p.min() + q.min();
  auto mask = empty_mask(lo, p.max() + q.max());
  const auto qs = q.members();
  for (int a : p.members())
    for (int b : qs) mask[static_cast<std::size_t>(a + b - lo)] = 1;
  return LagSet::from_mask(lo, std::move(mask));
}

LagSet diff_set(const LagSet& p, const LagSet& q) {
  if (p.empty() || q.empty()) return {};
  const int lo = p.min() - q.max();
  auto mask = empty_mask(lo, p.max() - q.min());
  const auto qs = q.members();
  for (int a : p.members())
    for (int b : qs) mask[static_cast<std::size_t>(a - b - lo)] = 1;
  return LagSet::from_mask(lo, std::move(mask));
}

LagSet translate(int c, const LagSet& p) {
  auto m = p.members();
  for (int& v : m) v += c;
  return LagSet(m);
}

LagSet negate(const LagSet& p) {
  auto m = p.members();
  for (int& v : m) v = -v;
  return LagSet(m);
}

LagSet set_union(const LagSet& a, const LagSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const int lo = std::min(a.min(), b.min());
  auto mask = empty_mask(lo, std::max(a.max(), b.max()));
  for (int v : a.members()) mask[static_cast<std::size_t>(v - lo)] = 1;
  for (int v : b.members()) mask[static_cast<std::size_t>(v - lo)] = 1;
  return LagSet::from_mask(lo, std::move(mask));
}

SensorArray reverse(const SensorArray& p) {
  const int top = p.aperture();
  std::vector<int> out;
  out.reserve(p.size());
  for (int v : p.positions()) out.push_back(top - v);
  return SensorArray(std::move(out));
}

// ---------------------------------------------------------------------------
// Geometry

namespace {

std::vector<int> nested_positions(int N, int M) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(N + M));
  for (int i = 0; i < N; ++i) out.push_back(i);
  for (int k = 1; k <= M; ++k) out.push_back(k * (N + 1) - 1);
  return out;
}

std::vector<int> coprime_positions(int N, int M) {
  std::vector<int> out;
  for (int i = 0; i < M; ++i) out.push_back(i * N);
  for (int i = 1; i < 2 * N; ++i) out.push_back(i * M);
  return out;
}

}  // namespace

SensorArray build_geometry(const GeometrySpec& spec) {
  spec.validate();
  const int N = spec.N;
  const int M = spec.M;
  std::vector<int> pos;
  switch (spec.family) {
    case Family::NA:
      pos = nested_positions(N, M);
      break;
    case Family::SNA: {
      const int offset = (spec.shift() + 1) / 2;
      pos.push_back(0);
      for (int p : nested_positions(N, M)) pos.push_back(p + offset);
      break;
    }
    case Family::RASNA:
      for (int p : nested_positions(N, M)) pos.push_back(spec.shift() - p);
      break;
    case Family::CPA:
      pos = coprime_positions(N, M);
      break;
    case Family::RASCPA:
      for (int p : coprime_positions(N, M)) pos.push_back(spec.shift() - p);
      break;
  }
  return SensorArray(std::move(pos), spec);
}

LagSet dca(const SensorArray& p) {
  const LagSet s = p.as_set();
  return diff_set(s, s);
}

LagSet sca(const SensorArray& p) {
  const LagSet s = p.as_set();
  return sum_set(s, s);
}

LagSet dsca(const SensorArray& p) {
  const LagSet sums = sca(p);
  return set_union(set_union(sums, negate(sums)), dca(p));
}

Segment central_segment(const LagSet& l) {
  if (!l.contains(0)) throw MissingZero("lag set does not contain 0");
  Segment s;
  while (l.contains(s.lo - 1)) --s.lo;
  while (l.contains(s.hi + 1)) ++s.hi;
  return s;
}

Segment longest_run(const LagSet& l) {
  const auto m = l.members();
  Segment best{m.front(), m.front()};
  Segment cur = best;
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (m[i] == cur.hi + 1) {
      cur.hi = m[i];
    } else {
      cur = {m[i], m[i]};
    }
    if (cur.count() > best.count()) best = cur;
  }
  return best;
}

bool covers(const LagSet& l, const Segment& s) {
  for (int v = s.lo; v <= s.hi; ++v)
    if (!l.contains(v)) return false;
  return true;
}

int consecutive_dsca_count(const SensorArray& p) { return central_segment(dsca(p)).count(); }

// ---------------------------------------------------------------------------
// Closed forms

namespace {

void require_unit_gap_coprime(int N, int M, const char* what) {
  if (N < 1 || M < 1 || std::gcd(N, M) != 1 || M - N != 1)
    throw HypothesisViolation(std::string(what) + " requires co-prime N, M with M - N = 1 (got N=" +
                              std::to_string(N) + ", M=" + std::to_string(M) + ")");
}

}  // namespace

bool has_prediction(const GeometrySpec& spec) noexcept {
  if (spec.N < 1 || spec.M < 1) return false;
  if (spec.family == Family::RASNA) return true;
  return spec.family == Family::RASCPA && spec.M - spec.N == 1;
}

int predicted_count(const GeometrySpec& spec) {
  const int N = spec.N;
  const int M = spec.M;
  switch (spec.family) {
    case Family::RASNA:
      if (N < 1 || M < 1) throw InvalidParameters(spec.name() + ": N and M must be positive");
      return 4 * M * N + 4 * M - 3;
    case Family::RASCPA:
      require_unit_gap_coprime(N, M, "RASCPA count prediction");
      return 8 * M * N - 4 * M - 2 * N * (N - 1) + 1;
    default:
      throw UnsupportedFamily("no closed-form count for " + std::string(to_string(spec.family)));
  }
}

Segment prop1_segment(int N, int M) {
  require_unit_gap_coprime(N, M, "CPA sum co-array segment");
  return {(N - 1) * N, 2 * N + (2 * N - 1) * M};
}

Segment prop2_segment(int N, int M) {
  require_unit_gap_coprime(N, M, "RAS-CPA DSCA segment");
  const int u = 4 * M * N - 2 * M - N * (N - 1);
  return {-u, u};
}

GeometrySpec best_split(int T, Family family) {
  std::vector<GeometrySpec> candidates;
  if (T >= 2) {
    if (is_nested_family(family)) {
      const int pool = family == Family::SNA ? T - 1 : T;
      for (int N = 1; N < pool; ++N) {
        GeometrySpec s{family, N, pool - N};
        if (family == Family::SNA && (s.M * (s.N + 1)) % 2 != 0) continue;
        candidates.push_back(s);
      }
    } else if (T % 3 == 0) {
      candidates.push_back({family, T / 3, T / 3 + 1});
    }
  }
  if (candidates.empty())
    throw NoValidSplit("no valid " + std::string(to_string(family)) + " split for T=" + std::to_string(T));

  GeometrySpec best = candidates.front();
  int best_count = consecutive_dsca_count(build_geometry(best));
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const GeometrySpec& c = candidates[i];
    const int count = consecutive_dsca_count(build_geometry(c));
    const bool better = count > best_count ||
                        (count == best_count && (c.M < best.M || (c.M == best.M && c.N < best.N)));
    if (better) {
      best = c;
      best_count = count;
    }
  }
  return best;
}

}  // namespace rasdoa
