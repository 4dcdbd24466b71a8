#ifndef SATQUAD_SATURATOR_HPP
#define SATQUAD_SATURATOR_HPP

// Greedy construction of 2-saturating sets inside the elliptic quadric.
//
// A point is covered by K when it lies on a plane through three (non-collinear)
// points of K. Since K is a subset of a cap, the line rule (points on a line
// through two points of K) adds nothing once |K| >= 3; it is kept behind
// GreedyConfig::mark_lines for cross-checking only.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "satquad/bitset.hpp"
#include "satquad/bounds.hpp"
#include "satquad/error.hpp"
#include "satquad/projective.hpp"
#include "satquad/quadric.hpp"

namespace satquad {

enum class Strategy { kGreedyMax, kRandomizedGreedy, kFixedOrder };
enum class DeltaStrategy { kAuto, kPlaneMarking, kPencilScan };

inline std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kGreedyMax: return "greedy-max";
    case Strategy::kRandomizedGreedy: return "randomized-greedy";
    case Strategy::kFixedOrder: return "fop";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view name) {
  if (name == "greedy-max" || name == "greedy") return Strategy::kGreedyMax;
  if (name == "rand" || name == "randomized-greedy") return Strategy::kRandomizedGreedy;
  if (name == "fop") return Strategy::kFixedOrder;
  throw Error(Errc::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

struct GreedyConfig {
  Strategy strategy = Strategy::kGreedyMax;
  std::uint64_t seed = 1;
  std::size_t pool_size = 50;  // randomized-greedy candidate sample
  bool mark_lines = false;     // also apply the (redundant) line rule
  DeltaStrategy delta = DeltaStrategy::kAuto;
  unsigned threads = 0;  // 0: $SATQUAD_THREADS, else hardware concurrency
};

/// Resolves the worker count for candidate scoring.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  if (const char* env = std::getenv("SATQUAD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Scratch buffers for one Delta evaluation at a time. One per thread.
class DeltaWorkspace {
 public:
  explicit DeltaWorkspace(const ProjectiveSpace3& space)
      : stamp_(space.num_points(), 0), mark_(space.points_per_plane(), 0) {}

 private:
  friend class CoverageState;
  std::vector<std::uint32_t> stamp_;  // over PG(3,q) points
  std::vector<std::uint32_t> mark_;   // over PG(2,q), lines through H
  std::uint32_t stamp_gen_ = 0;
  std::uint32_t mark_gen_ = 0;

  std::uint32_t next_stamp() {
    if (++stamp_gen_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      stamp_gen_ = 1;
    }
    return stamp_gen_;
  }
  std::uint32_t next_mark() {
    if (++mark_gen_ == 0) {
      std::fill(mark_.begin(), mark_.end(), 0);
      mark_gen_ = 1;
    }
    return mark_gen_;
  }
};

/// K_w together with the points it covers and the number of K-points on
/// every plane of PG(3,q).
class CoverageState {
 public:
  CoverageState(const EllipticQuadric& quadric, std::array<PointId, 3> triple,
                bool mark_lines = false)
      : quadric_(&quadric),
        mark_lines_(mark_lines),
        covered_(quadric.space().num_points()),
        in_k_(quadric.space().num_points()),
        plane_count_(quadric.space().num_planes(), 0) {
    const auto& space = quadric.space();
    for (std::size_t i = 0; i < 3; ++i) {
      if (!quadric.contains(triple[i])) throw Error(Errc::kNotOnQuadric, "initial point not on Q");
      for (std::size_t j = 0; j < i; ++j) {
        if (triple[i] == triple[j]) throw Error(Errc::kRepeatedPoint, "initial points repeat");
      }
    }
    const PlaneId pi = space.plane_through(triple[0], triple[1], triple[2]);
    space.for_each_point_on_plane(pi, [&](PointId p) { covered_.set(p.value); });
    for (PointId b : triple) {
      k_.push_back(b);
      in_k_.set(b.value);
      space.for_each_plane_through_point(b, [&](PlaneId h) { ++plane_count_[h.value]; });
    }
    uncovered_count_ = space.num_points() - covered_.count();
    rebuild_uncovered();
  }

  /// State for an arbitrary K ⊂ Q with |K| >= 3, built by replaying additions.
  static CoverageState from_points(const EllipticQuadric& quadric, std::span<const PointId> pts,
                                   bool mark_lines = false) {
    if (pts.size() < 3) throw Error(Errc::kInvalidArgument, "need at least three points");
    CoverageState s(quadric, {pts[0], pts[1], pts[2]}, mark_lines);
    for (std::size_t i = 3; i < pts.size(); ++i) s.add(pts[i]);
    return s;
  }

  const EllipticQuadric& quadric() const noexcept { return *quadric_; }
  const ProjectiveSpace3& space() const noexcept { return quadric_->space(); }
  std::span<const PointId> points() const noexcept { return k_; }
  std::size_t size() const noexcept { return k_.size(); }
  std::uint64_t uncovered_count() const noexcept { return uncovered_count_; }
  bool is_covered(PointId p) const noexcept { return covered_.test(p.value); }
  bool in_set(PointId p) const noexcept { return in_k_.test(p.value); }
  std::uint32_t plane_count(PlaneId pi) const noexcept { return plane_count_[pi.value]; }
  std::span<const PointId> uncovered_points() const noexcept { return uncovered_; }
  const Bitset& covered() const noexcept { return covered_; }
  bool mark_lines() const noexcept { return mark_lines_; }

  /// Quadric points not in K, ascending.
  std::vector<PointId> candidates() const {
    std::vector<PointId> out;
    out.reserve(quadric_->size() - k_.size());
    for (PointId p : quadric_->points()) {
      if (!in_k_.test(p.value)) out.push_back(p);
    }
    return out;
  }

  /// Picks the cheaper Delta evaluation for the current state.
  DeltaStrategy auto_strategy() const noexcept {
    if (mark_lines_) return DeltaStrategy::kPlaneMarking;
    const std::uint64_t pairs = k_.size() * (k_.size() - 1) / 2;
    const std::uint64_t plane_cost = pairs * space().points_per_plane();
    const std::uint64_t pencil_cost = 2 * uncovered_count_ + pairs * (space().q() + 1);
    return pencil_cost < plane_cost ? DeltaStrategy::kPencilScan : DeltaStrategy::kPlaneMarking;
  }

  /// Number of uncovered points that K ∪ {h} would cover. Read-only.
  std::uint64_t delta(PointId h, DeltaStrategy strategy, DeltaWorkspace& ws) const {
    check_candidate(h);
    if (strategy == DeltaStrategy::kAuto) strategy = auto_strategy();
    if (strategy == DeltaStrategy::kPencilScan && !mark_lines_) return delta_pencil(h, ws);
    return delta_planes(h, ws);
  }

  std::uint64_t delta(PointId h, DeltaStrategy strategy = DeltaStrategy::kAuto) const {
    DeltaWorkspace ws(space());
    return delta(h, strategy, ws);
  }

  /// Whether adding h would cover the uncovered point p.
  bool would_cover(PointId h, PointId p) const {
    check_candidate(h);
    if (p == h) return true;
    const auto& sp = space();
    const Vec4 hv = sp.point(h), pv = sp.point(p);
    for (std::size_t i = 0; i < k_.size(); ++i) {
      const Vec4 bi = sp.point(k_[i]);
      for (std::size_t j = i + 1; j < k_.size(); ++j) {
        if (sp.det4(bi, sp.point(k_[j]), hv, pv) == 0) return true;
      }
    }
    return false;
  }

  /// Commits h to K; returns the number of newly covered points.
  std::uint64_t add(PointId h) {
    check_candidate(h);
    const auto& sp = space();
    const std::uint64_t before = uncovered_count_;
    auto cover = [&](PointId p) {
      if (covered_.insert(p.value)) --uncovered_count_;
    };
    for (std::size_t i = 0; i < k_.size(); ++i) {
      for (std::size_t j = i + 1; j < k_.size(); ++j) {
        const PlaneId pi = sp.plane_through(k_[i], k_[j], h);
        // A plane with three K-points is covered already.
        if (plane_count_[pi.value] == 2) sp.for_each_point_on_plane(pi, cover);
      }
    }
    if (mark_lines_) {
      for (PointId b : k_) {
        for (PointId p : sp.points_on_line(b, h)) cover(p);
      }
    }
    sp.for_each_plane_through_point(h, [&](PlaneId pi) { ++plane_count_[pi.value]; });
    k_.push_back(h);
    in_k_.set(h.value);
    rebuild_uncovered();
    return before - uncovered_count_;
  }

 private:
  void check_candidate(PointId h) const {
    if (!quadric_->contains(h)) throw Error(Errc::kNotOnQuadric, "candidate not on the quadric");
    if (in_k_.test(h.value)) throw Error(Errc::kRepeatedPoint, "candidate already in K");
  }

  void rebuild_uncovered() {
    uncovered_.clear();
    covered_.for_each_clear([&](std::size_t i) {
      uncovered_.push_back(PointId{static_cast<std::uint32_t>(i)});
    });
  }

  // Union of the planes <B_i, B_j, h>, each point counted once.
  std::uint64_t delta_planes(PointId h, DeltaWorkspace& ws) const {
    const auto& sp = space();
    const std::uint32_t gen = ws.next_stamp();
    std::uint64_t count = 0;
    auto visit = [&](PointId p) {
      if (!covered_.test(p.value) && ws.stamp_[p.value] != gen) {
        ws.stamp_[p.value] = gen;
        ++count;
      }
    };
    for (std::size_t i = 0; i < k_.size(); ++i) {
      for (std::size_t j = i + 1; j < k_.size(); ++j) {
        const PlaneId pi = sp.plane_through(k_[i], k_[j], h);
        if (plane_count_[pi.value] >= 3) continue;
        sp.for_each_point_on_plane(pi, visit);
      }
    }
    if (mark_lines_) {
      for (PointId b : k_) {
        for (PointId p : sp.points_on_line(b, h)) visit(p);
      }
    }
    return count;
  }

  // Pencil test through central projection from h: lines through h are the
  // points of PG(2,q) and planes through h are its lines. A plane through h
  // carries >= 2 points of K exactly when its image joins two projected
  // K-points, so marking those lines answers "some plane of the pencil of
  // <h, P> has plane_count >= 2" for every P at once.
  std::uint64_t delta_pencil(PointId h, DeltaWorkspace& ws) const {
    const auto& sp = space();
    const auto& f = sp.field();
    const auto forms = RowReducer<4>(f).nullspace({sp.point(h)});
    const ProjectiveIndexer<3> plane_index(sp.q());
    auto project = [&](const Vec4& x) {
      return sp.canonical(Vec3{sp.dot(forms[0], x), sp.dot(forms[1], x), sp.dot(forms[2], x)});
    };

    std::vector<Vec3> images;
    images.reserve(k_.size());
    for (PointId b : k_) images.push_back(project(sp.point(b)));

    const std::uint32_t gen = ws.next_mark();
    const RowReducer<3> reducer(f);
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = i + 1; j < images.size(); ++j) {
        std::vector<Vec3> rows{images[i], images[j]};
        reducer.rref(rows);
        for (Elem t = 0; t < sp.q(); ++t) {
          ws.mark_[plane_index.rank(sp.combine(rows[0], t, rows[1]))] = gen;
        }
        ws.mark_[plane_index.rank(rows[1])] = gen;
      }
    }

    std::uint64_t count = covered_.test(h.value) ? 0 : 1;
    for (PointId p : uncovered_) {
      if (p == h) continue;
      if (ws.mark_[plane_index.rank(project(sp.point(p)))] == gen) ++count;
    }
    return count;
  }

  const EllipticQuadric* quadric_;
  bool mark_lines_;
  std::vector<PointId> k_;
  Bitset covered_;
  Bitset in_k_;
  std::vector<std::uint16_t> plane_count_;
  std::uint64_t uncovered_count_ = 0;
  std::vector<PointId> uncovered_;
};

struct StepRecord {
  std::size_t w = 0;  // |K| before the step
  PointId chosen;
  std::uint64_t delta = 0;
  std::uint64_t uncovered_before = 0;
  std::uint64_t uncovered_after = 0;
  std::optional<u128> bound_a_cap;  // recurrence value #U_{w+1}
  std::uint64_t guaranteed = 0;     // ceil(S_w^min #U_w / (q^2+1-w))
  std::size_t scanned = 0;          // candidates evaluated
  double delta_mean = 0;            // mean Delta over the scanned candidates
  bool augmentation = false;        // final single-residue fix-up
};

struct RunTrace {
  std::uint64_t q = 0;
  Strategy strategy = Strategy::kGreedyMax;
  std::uint64_t initial_uncovered = 0;
  std::vector<StepRecord> steps;
};

/// Scores candidates for one greedy step; owns per-thread workspaces.
class CandidateScorer {
 public:
  CandidateScorer(const ProjectiveSpace3& space, unsigned threads) {
    const unsigned n = std::max(1U, threads);
    for (unsigned i = 0; i < n; ++i) workspaces_.emplace_back(space);
  }

  std::vector<std::uint64_t> score(const CoverageState& state, std::span<const PointId> cands,
                                   DeltaStrategy strategy) {
    std::vector<std::uint64_t> out(cands.size(), 0);
    if (strategy == DeltaStrategy::kAuto) strategy = state.auto_strategy();
    const std::size_t n = std::min<std::size_t>(workspaces_.size(), cands.size());
    if (n <= 1) {
      for (std::size_t i = 0; i < cands.size(); ++i) out[i] = state.delta(cands[i], strategy, workspaces_[0]);
      return out;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < cands.size(); i += n) {
          out[i] = state.delta(cands[i], strategy, workspaces_[t]);
        }
      });
    }
    for (auto& th : pool) th.join();
    return out;
  }

  DeltaWorkspace& primary() { return workspaces_[0]; }

 private:
  std::vector<DeltaWorkspace> workspaces_;
};

namespace detail {

// Unbiased draw in [0, bound) from a 64-bit engine by rejection.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % bound;
}

// First k entries of a partial Fisher-Yates shuffle, then sorted ascending.
inline std::vector<PointId> sample(std::vector<PointId> items, std::size_t k, std::mt19937_64& rng) {
  k = std::min(k, items.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(items[i], items[i + bounded(rng, items.size() - i)]);
  }
  items.resize(k);
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace detail

/// One step of the construction: choose B_{w+1} and commit it.
class GreedyRunner {
 public:
  GreedyRunner(const EllipticQuadric& quadric, GreedyConfig cfg)
      : quadric_(quadric),
        cfg_(cfg),
        rng_(cfg.seed),
        scorer_(quadric.space(), resolve_threads(cfg.threads)),
        recurrence_(bounds::bound_a(quadric.q())) {
    if (cfg_.pool_size == 0) throw Error(Errc::kInvalidArgument, "pool_size must be >= 1");
  }

  StepRecord step(CoverageState& state) {
    if (state.uncovered_count() <= 1) throw Error(Errc::kInvalidArgument, "nothing left to cover");
    const auto all = state.candidates();
    if (all.empty()) throw Error(Errc::kConstructionStall, "no candidates left on Q");

    StepRecord rec;
    rec.w = state.size();
    rec.uncovered_before = state.uncovered_count();
    rec.bound_a_cap = recurrence_.uncovered_at(rec.w + 1);
    const std::uint64_t den = static_cast<std::uint64_t>(quadric_.q()) * quadric_.q() + 1 - rec.w;
    const u128 num = static_cast<u128>(bounds::s_w_min(rec.w, quadric_.q())) * rec.uncovered_before;
    rec.guaranteed = static_cast<std::uint64_t>((num + den - 1) / den);

    std::optional<PointId> chosen;
    std::uint64_t best = 0;
    if (cfg_.strategy == Strategy::kFixedOrder) {
      for (PointId h : all) {
        ++rec.scanned;
        const std::uint64_t d = state.delta(h, cfg_.delta, scorer_.primary());
        rec.delta_mean += static_cast<double>(d);
        if (d > 0) {
          chosen = h;
          best = d;
          break;
        }
      }
      if (rec.scanned) rec.delta_mean /= static_cast<double>(rec.scanned);
    } else {
      std::vector<PointId> pool = cfg_.strategy == Strategy::kRandomizedGreedy
                                      ? detail::sample(all, cfg_.pool_size, rng_)
                                      : all;
      pick_max(state, pool, rec, chosen, best);
      if (best == 0 && pool.size() < all.size()) {
        // The sample was unlucky; fall back to the full candidate list.
        pick_max(state, all, rec, chosen, best);
      }
    }
    if (!chosen || best == 0) {
      throw Error(Errc::kConstructionStall,
                  "no candidate covers a new point with " + std::to_string(state.uncovered_count()) +
                      " uncovered");
    }
    rec.chosen = *chosen;
    rec.delta = state.add(*chosen);
    rec.uncovered_after = state.uncovered_count();
    return rec;
  }

  /// Adds the smallest-index quadric point covering the single residue.
  StepRecord augment(CoverageState& state) {
    if (state.uncovered_count() != 1) throw Error(Errc::kInvalidArgument, "augment needs one residue");
    const PointId residue = state.uncovered_points().front();
    StepRecord rec;
    rec.w = state.size();
    rec.uncovered_before = 1;
    rec.augmentation = true;
    rec.bound_a_cap = recurrence_.uncovered_at(rec.w + 1);
    for (PointId h : state.candidates()) {
      ++rec.scanned;
      if (state.would_cover(h, residue)) {
        rec.chosen = h;
        rec.delta = state.add(h);
        rec.uncovered_after = state.uncovered_count();
        return rec;
      }
    }
    throw Error(Errc::kAugmentationFailed,
                "no quadric point covers the residual point " + std::to_string(residue.value));
  }

  const bounds::BoundA& recurrence() const noexcept { return recurrence_; }

 private:
  void pick_max(const CoverageState& state, std::span<const PointId> pool, StepRecord& rec,
                std::optional<PointId>& chosen, std::uint64_t& best) {
    const auto scores = scorer_.score(state, pool, cfg_.delta);
    rec.scanned = pool.size();
    double sum = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      sum += static_cast<double>(scores[i]);
      // Pool is ascending, so strict > keeps the smallest index on ties.
      if (!chosen || scores[i] > best) {
        chosen = pool[i];
        best = scores[i];
      }
    }
    rec.delta_mean = pool.empty() ? 0 : sum / static_cast<double>(pool.size());
  }

  const EllipticQuadric& quadric_;
  GreedyConfig cfg_;
  std::mt19937_64 rng_;
  CandidateScorer scorer_;
  bounds::BoundA recurrence_;
};

struct VerifyResult {
  bool saturating = false;
  std::uint64_t uncovered = 0;
  std::optional<PointId> witness;  // smallest uncovered point
};

/// Exhaustive check that every point of PG(3,q) lies on a plane spanned by
/// three non-collinear points of the set. The set need not lie on Q.
inline VerifyResult verify_2saturating(const ProjectiveSpace3& space, std::span<const PointId> set) {
  Bitset planes(space.num_planes());
  std::vector<PlaneId> distinct;
  std::vector<Vec4> coords;
  coords.reserve(set.size());
  for (PointId p : set) coords.push_back(space.point(p));
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      for (std::size_t k = j + 1; k < coords.size(); ++k) {
        const auto pi = space.try_plane_through(coords[i], coords[j], coords[k]);
        if (pi && planes.insert(pi->value)) distinct.push_back(*pi);
      }
    }
  }
  Bitset covered(space.num_points());
  for (PlaneId pi : distinct) {
    space.for_each_point_on_plane(pi, [&](PointId p) { covered.set(p.value); });
  }
  VerifyResult out;
  covered.for_each_clear([&](std::size_t i) {
    if (!out.witness) out.witness = PointId{static_cast<std::uint32_t>(i)};
    ++out.uncovered;
  });
  out.saturating = out.uncovered == 0;
  return out;
}

inline VerifyResult verify_2saturating(const EllipticQuadric& quadric, std::span<const PointId> set) {
  return verify_2saturating(quadric.space(), set);
}

struct RunResult {
  std::vector<PointId> set;
  RunTrace trace;
  bool augmented = false;
};

/// Full construction from the first three quadric points until at most one
/// point is uncovered, plus the final augmentation when needed. The result
/// is re-verified exhaustively.
inline RunResult run(const EllipticQuadric& quadric, const GreedyConfig& cfg) {
  const auto pts = quadric.points();
  CoverageState state(quadric, {pts[0], pts[1], pts[2]}, cfg.mark_lines);
  GreedyRunner runner(quadric, cfg);
  RunResult result;
  result.trace.q = quadric.q();
  result.trace.strategy = cfg.strategy;
  result.trace.initial_uncovered = state.uncovered_count();
  while (state.uncovered_count() > 1) result.trace.steps.push_back(runner.step(state));
  if (state.uncovered_count() == 1) {
    result.trace.steps.push_back(runner.augment(state));
    result.augmented = true;
  }
  result.set.assign(state.points().begin(), state.points().end());
  const VerifyResult check = verify_2saturating(quadric, result.set);
  if (!check.saturating) {
    throw Error(Errc::kConstructionStall, "constructed set failed verification");
  }
  return result;
}

/// Brute-force S_w(P): for every H in Q \ K, whether P lies on a plane
/// through H and two points of K. Kept independent of plane indexing; the
/// plane normals are raw cross products.
class InclusionOracle {
 public:
  explicit InclusionOracle(const CoverageState& state) : state_(&state) {
    const auto& sp = state.space();
    const auto k = state.points();
    for (PointId h : state.candidates()) {
      std::vector<Vec4> normals;
      const Vec4 hv = sp.point(h);
      for (std::size_t i = 0; i < k.size(); ++i) {
        for (std::size_t j = i + 1; j < k.size(); ++j) {
          normals.push_back(sp.cross(sp.point(k[i]), sp.point(k[j]), hv));
        }
      }
      candidates_.push_back(h);
      normals_.push_back(std::move(normals));
    }
  }

  /// Number of candidates H whose addition newly covers P.
  std::uint64_t s_w(PointId p) const {
    if (state_->is_covered(p)) throw Error(Errc::kInvalidQuery, "point already covered");
    const auto& sp = state_->space();
    const Vec4 pv = sp.point(p);
    std::uint64_t count = 0;
    for (const auto& normals : normals_) {
      for (const Vec4& n : normals) {
        if (sp.dot(n, pv) == 0) {
          ++count;
          break;
        }
      }
    }
    return count;
  }

  /// Whether P ∈ N(H) for the i-th candidate.
  bool includes(std::size_t candidate, PointId p) const {
    const auto& sp = state_->space();
    const Vec4 pv = sp.point(p);
    for (const Vec4& n : normals_[candidate]) {
      if (sp.dot(n, pv) == 0) return true;
    }
    return false;
  }

  std::span<const PointId> candidates() const noexcept { return candidates_; }

 private:
  const CoverageState* state_;
  std::vector<PointId> candidates_;
  std::vector<std::vector<Vec4>> normals_;
};

inline std::uint64_t s_w_of_point(const CoverageState& state, PointId p) {
  return InclusionOracle(state).s_w(p);
}

}  // namespace satquad

#endif  // SATQUAD_SATURATOR_HPP
