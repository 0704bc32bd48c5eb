#include "domination.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <set>

#include "errors.hpp"
#include "modular.hpp"
#include "parallel.hpp"
#include "quaternion.hpp"

namespace lzdg {

namespace {

constexpr uint64_t kNodeBudget = uint64_t(1) << 62;
constexpr size_t kCertificateCap = 2000;

struct Mask {
    std::vector<uint64_t> w;

    explicit Mask(size_t words = 0) : w(words, 0) {}

    void set(uint32_t i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    bool get(uint32_t i) const {
        return (w[i >> 6] >> (i & 63)) & 1;
    }
    void or_with(const Mask& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    }
    uint64_t count() const {
        uint64_t c = 0;
        for (uint64_t v : w) c += std::popcount(v);
        return c;
    }
    uint64_t count_new(const Mask& covered) const {
        uint64_t c = 0;
        for (size_t k = 0; k < w.size(); ++k)
            c += std::popcount(w[k] & ~covered.w[k]);
        return c;
    }
    // this & ~excluded subset of other & ~excluded
    bool subset_outside(const Mask& other, const Mask& excluded) const {
        for (size_t k = 0; k < w.size(); ++k)
            if ((w[k] & ~excluded.w[k]) & ~other.w[k]) return false;
        return true;
    }
    bool equal_outside(const Mask& other, const Mask& excluded) const {
        for (size_t k = 0; k < w.size(); ++k)
            if ((w[k] ^ other.w[k]) & ~excluded.w[k]) return false;
        return true;
    }
};

// an option is atomic: either place one element into class cls, or
// raise class cls to its full size
struct Option {
    uint32_t cls;
    bool full;
};

struct Solver {
    const DomInstance& inst;
    uint32_t count;
    size_t words;
    std::vector<Mask> pick1; // coverage of x[cls] going to >= 1
    std::vector<Mask> fullm; // coverage of x[cls] going to |cls|
    std::vector<Mask> cover_union; // union of all option coverages per class
    std::vector<uint32_t> option_count;
    std::vector<uint8_t> has_pick_coverer; // row nonempty
    std::vector<uint32_t> pack_order; // ascending option-footprint size
    Mask all;

    std::vector<uint64_t> x;
    Mask covered;
    uint64_t cost = 0;

    uint64_t best = 0;
    std::vector<uint64_t> best_x;
    uint64_t nodes = 0;
    std::vector<std::string>* log = nullptr;

    explicit Solver(const DomInstance& in)
        : inst(in), count(in.count), words((in.count + 63) / 64) {
        pick1.assign(count, Mask(words));
        fullm.assign(count, Mask(words));
        cover_union.assign(count, Mask(words));
        option_count.assign(count, 0);
        has_pick_coverer.assign(count, 0);
        all = Mask(words);
        for (uint32_t c = 0; c < count; ++c) {
            all.set(c);
            for (uint32_t d = 0; d < count; ++d)
                if (inst.adj.get(c, d)) pick1[c].set(d);
            // symmetric adjacency puts the self bit on the diagonal
            // exactly when the class is self-adjacent
            check_internal(pick1[c].get(c) == (inst.self_adjacent[c] != 0),
                           "diagonal bit must mirror self-adjacency");
            fullm[c] = pick1[c];
            fullm[c].set(c);
            // a single placement fills a one-element class, and a selected
            // element always dominates itself, so the pick option on such
            // a class satisfies the class as well
            if (inst.sizes[c] == 1) pick1[c].set(c);
        }
        for (uint32_t c = 0; c < count; ++c) {
            uint32_t n_cov = 0;
            for (uint32_t d = 0; d < count; ++d) {
                if (pick1[c].get(d)) {
                    ++n_cov;
                    cover_union[c].or_with(pick1[d]);
                }
            }
            has_pick_coverer[c] = n_cov > 0;
            option_count[c] = n_cov;
            // the full option is distinct from a pick only on classes
            // holding more than one element
            if (!inst.self_adjacent[c] && inst.sizes[c] > 1) {
                cover_union[c].or_with(fullm[c]);
                ++option_count[c];
            }
            check_internal(option_count[c] > 0,
                           "every class owns at least one option");
        }
        // packing classes with small option footprints first blocks the
        // fewest other classes and gives the strongest bound
        pack_order.resize(count);
        for (uint32_t c = 0; c < count; ++c) pack_order[c] = c;
        std::vector<uint64_t> footprint(count);
        for (uint32_t c = 0; c < count; ++c)
            footprint[c] = cover_union[c].count();
        std::sort(pack_order.begin(), pack_order.end(),
                  [&](uint32_t a, uint32_t b) {
                      if (footprint[a] != footprint[b])
                          return footprint[a] < footprint[b];
                      return a < b;
                  });
        x.assign(count, 0);
        covered = Mask(words);
    }

    void note(std::string s) {
        if (!log) return;
        if (log->size() < kCertificateCap) {
            log->push_back(std::move(s));
        } else if (log->size() == kCertificateCap) {
            log->push_back("[certificate truncated]");
        }
    }

    bool done() const {
        for (size_t k = 0; k < words; ++k)
            if (covered.w[k] != all.w[k]) return false;
        return true;
    }

    uint64_t option_cost(uint32_t c, bool full) const {
        return full ? inst.sizes[c] - x[c] : 1;
    }

    void apply(uint32_t c, bool full) {
        if (full) {
            cost += inst.sizes[c] - x[c];
            x[c] = inst.sizes[c];
            covered.or_with(fullm[c]);
        } else {
            check_internal(x[c] == 0, "single placement on an empty class");
            cost += 1;
            x[c] = 1;
            covered.or_with(pick1[c]);
        }
    }

    // greedy ratio heuristic for the initial incumbent
    void greedy_upper_bound() {
        while (!done()) {
            uint32_t bc = 0;
            bool bfull = false;
            uint64_t bcov = 0, bcost = 1;
            bool found = false;
            for (uint32_t c = 0; c < count; ++c) {
                if (x[c] == 0) {
                    uint64_t cov = pick1[c].count_new(covered);
                    if (cov && (!found || cov * bcost > bcov * 1)) {
                        bc = c, bfull = false, bcov = cov, bcost = 1;
                        found = true;
                    }
                }
                if (x[c] < inst.sizes[c]) {
                    uint64_t cov = fullm[c].count_new(covered);
                    uint64_t oc = option_cost(c, true);
                    if (cov && (!found || cov * bcost > bcov * oc)) {
                        bc = c, bfull = true, bcov = cov, bcost = oc;
                        found = true;
                    }
                }
            }
            check_internal(found, "greedy always finds a covering option");
            apply(bc, bfull);
        }
        best = cost;
        best_x = x;
        note("greedy upper bound " + std::to_string(best));
    }

    // disjoint packing of uncovered classes whose option coverages
    // cannot overlap; each packed class adds its cheapest option.
    // Stops once the bound alone proves a prune against stop_at.
    uint64_t lower_bound(uint64_t stop_at) const {
        Mask blocked = covered;
        uint64_t lb = 0;
        for (uint32_t c : pack_order) {
            if (blocked.get(c)) continue;
            lb += has_pick_coverer[c] ? 1 : inst.sizes[c] - x[c];
            if (lb >= stop_at) return lb;
            blocked.or_with(cover_union[c]);
        }
        return lb;
    }

    void record_incumbent() {
        best = cost;
        best_x = x;
        note("incumbent " + std::to_string(best) + " nodes=" +
             std::to_string(nodes));
    }

    void solve(unsigned depth) {
        ++nodes;
        require(nodes < kNodeBudget, "domination search node budget exceeded");

        // unit propagation: classes with a single atomic option
        size_t applied_log = 0;
        for (;;) {
            if (done()) {
                if (cost < best) record_incumbent();
                return;
            }
            bool forced_any = false;
            for (uint32_t c = 0; c < count && cost < best; ++c) {
                if (covered.get(c) || option_count[c] != 1) continue;
                bool full = !inst.self_adjacent[c];
                if (applied_log++ < 4)
                    note("forced class=" + std::to_string(c) +
                         (full ? " full" : " one"));
                apply(c, full);
                forced_any = true;
            }
            if (!forced_any) break;
        }
        if (cost >= best || cost + lower_bound(best - cost) >= best) return;

        // branch on the uncovered class with the fewest options
        uint32_t bc = count;
        for (uint32_t c = 0; c < count; ++c) {
            if (covered.get(c)) continue;
            if (bc == count || option_count[c] < option_count[bc]) bc = c;
        }
        check_internal(bc < count, "uncovered class exists at a branch node");

        struct Cand {
            uint32_t cls;
            bool full;
            uint64_t cov, cst;
        };
        std::vector<Cand> cands;
        for (uint32_t d = 0; d < count; ++d)
            if (pick1[bc].get(d))
                cands.push_back({d, false, pick1[d].count_new(covered), 1});
        if (!inst.self_adjacent[bc] && inst.sizes[bc] > 1)
            cands.push_back({bc, true, fullm[bc].count_new(covered),
                             option_cost(bc, true)});

        // drop candidates whose uncovered coverage is contained in a
        // cheaper-or-equal candidate's; any solution through a dropped
        // branch maps to one of no greater cost through a kept branch
        auto mask_of = [&](const Cand& cd) -> const Mask& {
            return cd.full ? fullm[cd.cls] : pick1[cd.cls];
        };
        std::vector<Cand> kept;
        for (size_t i = 0; i < cands.size(); ++i) {
            const Mask& mi = mask_of(cands[i]);
            bool dominated = false;
            for (size_t j = 0; j < cands.size() && !dominated; ++j) {
                if (j == i || cands[j].cst > cands[i].cst) continue;
                const Mask& mj = mask_of(cands[j]);
                if (!mi.subset_outside(mj, covered)) continue;
                if (!mi.equal_outside(mj, covered) ||
                    cands[j].cst < cands[i].cst)
                    dominated = true;
                else
                    // identical option footprints: keep the first in the
                    // deterministic (cls, full) order
                    dominated = std::make_pair(cands[j].cls, cands[j].full) <
                                std::make_pair(cands[i].cls, cands[i].full);
            }
            if (!dominated) kept.push_back(cands[i]);
        }
        cands.swap(kept);

        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            // larger coverage per unit cost first, then stable class order
            if (a.cov * b.cst != b.cov * a.cst)
                return a.cov * b.cst > b.cov * a.cst;
            if (a.cls != b.cls) return a.cls < b.cls;
            return a.full < b.full;
        });
        if (depth < 3)
            note("branch depth=" + std::to_string(depth) + " class=" +
                 std::to_string(bc) + " options=" +
                 std::to_string(cands.size()));

        auto saved_x = x;
        auto saved_cov = covered;
        uint64_t saved_cost = cost;
        for (const Cand& cd : cands) {
            if (cost + cd.cst >= best) continue;
            apply(cd.cls, cd.full);
            solve(depth + 1);
            x = saved_x;
            covered = saved_cov;
            cost = saved_cost;
        }
    }
};

} // namespace

DomInstance dom_instance(const ClassGraph& cg) {
    DomInstance inst;
    inst.count = cg.count;
    inst.sizes = cg.sizes;
    inst.adj = cg.adj;
    inst.self_adjacent = cg.self_adjacent;
    inst.labels = cg.labels;
    return inst;
}

DominationResult exact_domination(const DomInstance& inst,
                                  uint32_t class_cap) {
    require(inst.count > 0, "domination needs at least one class");
    if (inst.count > class_cap)
        throw resource_limit("class count " + std::to_string(inst.count) +
                             " exceeds the class cap " +
                             std::to_string(class_cap) +
                             " (raise the cap to proceed)");
    for (uint32_t c = 0; c < inst.count; ++c)
        require(inst.sizes[c] > 0, "class sizes must be positive");

    DominationResult res;
    Solver greedy(inst);
    greedy.log = &res.certificate;
    greedy.greedy_upper_bound();

    Solver bnb(inst);
    bnb.log = &res.certificate;
    bnb.best = greedy.best;
    bnb.best_x = greedy.best_x;
    bnb.note("root lower bound " +
             std::to_string(bnb.lower_bound(UINT64_MAX)));
    bnb.solve(0);

    res.gamma = bnb.best;
    for (uint32_t c = 0; c < inst.count; ++c)
        if (bnb.best_x[c]) res.witness.emplace_back(c, bnb.best_x[c]);
    res.optimal = true;
    res.nodes = bnb.nodes;
    res.certificate.push_back("optimal " + std::to_string(res.gamma) +
                              " nodes=" + std::to_string(res.nodes));
    return res;
}

uint64_t brute_force_domination(const std::vector<uint64_t>& closed_masks) {
    size_t n = closed_masks.size();
    require(n >= 1 && n <= 48, "brute force oracle handles 1..48 vertices");
    uint64_t full = (uint64_t(1) << n) - 1;
    for (size_t v = 0; v < n; ++v)
        require((closed_masks[v] >> v) & 1,
                "closed neighborhood must include the vertex itself");

    // depth-limited search by increasing target size; the lowest
    // uncovered vertex must be covered by one of its closed neighbors
    auto rec = [&](auto&& self, uint64_t covered, size_t remaining) -> bool {
        if (covered == full) return true;
        if (remaining == 0) return false;
        size_t u = size_t(std::countr_zero(~covered & full));
        for (size_t v = 0; v < n; ++v) {
            if (!((closed_masks[u] >> v) & 1)) continue;
            if (self(self, covered | closed_masks[v], remaining - 1))
                return true;
        }
        return false;
    };
    for (size_t k = 1; k <= n; ++k)
        if (rec(rec, 0, k)) return k;
    throw internal_error("a dominating set of all vertices always exists");
}

std::vector<uint64_t> closed_masks_of(const ZdGraph& g) {
    size_t n = g.verts.size();
    require(n >= 1 && n <= 48, "brute force oracle handles 1..48 vertices");
    std::vector<uint64_t> masks(n, 0);
    for (size_t u = 0; u < n; ++u) {
        masks[u] |= uint64_t(1) << u;
        for (size_t v = 0; v < n; ++v)
            if (u != v && g.adjacent(uint32_t(u), uint32_t(v)))
                masks[u] |= uint64_t(1) << v;
    }
    return masks;
}

DomInstance dom_instance_plain(const std::vector<uint64_t>& closed_masks) {
    size_t n = closed_masks.size();
    require(n >= 1 && n <= 48, "plain instances handle 1..48 vertices");
    // vertices with equal open neighborhoods merge; such twins are
    // never adjacent in a loopless graph
    std::vector<uint64_t> open(n);
    for (size_t v = 0; v < n; ++v)
        open[v] = closed_masks[v] & ~(uint64_t(1) << v);
    std::map<uint64_t, uint32_t> group;
    std::vector<uint32_t> class_of(n);
    std::vector<std::vector<uint32_t>> members;
    for (size_t v = 0; v < n; ++v) {
        auto it = group.find(open[v]);
        if (it == group.end()) {
            it = group.emplace(open[v], uint32_t(members.size())).first;
            members.push_back({});
        }
        class_of[v] = it->second;
        members[it->second].push_back(uint32_t(v));
    }
    uint32_t count = uint32_t(members.size());
    DomInstance inst;
    inst.count = count;
    inst.sizes.assign(count, 0);
    inst.self_adjacent.assign(count, 0);
    inst.adj = BitRows(count, count);
    for (uint32_t c = 0; c < count; ++c) {
        inst.sizes[c] = members[c].size();
        uint32_t rep = members[c][0];
        for (uint32_t d = 0; d < count; ++d) {
            if (d == c) continue;
            if ((open[rep] >> members[d][0]) & 1) inst.adj.set(c, d);
        }
    }
    return inst;
}

std::vector<Mat2> paper_dominating_set(uint64_t p, unsigned s) {
    Modulus pf = factorize(p);
    require(pf.factors.size() == 1 && pf.factors[0].second == 1,
            "modulus base must be prime");
    require(s >= 1 && s <= 10, "exponent out of range");
    uint64_t ps = 1;
    for (unsigned k = 0; k < s; ++k) {
        require(ps <= 4096 / p, "modulus too large");
        ps *= p;
    }
    uint64_t scale = ps / p; // p^{s-1}
    std::set<uint64_t> seen;
    std::vector<Mat2> out;
    auto push = [&](uint64_t a1, uint64_t a2) {
        Mat2 m{a1 * a1 % ps, a1 * a2 % ps, a2 * a1 % ps, a2 * a2 % ps};
        m = mscale(scale, m, ps);
        if (seen.insert(mpack(m, ps)).second) out.push_back(m);
    };
    for (uint64_t a = 0; a < ps; ++a) push(1, a);
    for (uint64_t b = 0; b < ps; b += p) push(b, 1);
    check_internal(out.size() == p + 1,
                   "the scaled projective family has p + 1 members");
    std::sort(out.begin(), out.end(), [&](const Mat2& a, const Mat2& b) {
        return mpack(a, ps) < mpack(b, ps);
    });
    return out;
}

std::vector<uint64_t> composite_dominating_set(uint64_t n) {
    require(n >= 2 && n <= 4096, "modulus out of range");
    Modulus mod = factorize(n);
    size_t slots = mod.factors.size();

    std::vector<std::vector<Quat>> slot_sets(slots);
    for (size_t t = 0; t < slots; ++t) {
        uint64_t p = mod.factors[t].first;
        unsigned e = mod.factors[t].second;
        uint64_t pe = mod.prime_power(t);
        if (p == 2) {
            uint64_t half = pe / 2; // 2^{e-1}
            slot_sets[t] = {Quat{half % pe, half % pe, half % pe, half % pe}};
        } else {
            QuatMatIso iso = make_iso(p, e);
            for (const Mat2& m : paper_dominating_set(p, e))
                slot_sets[t].push_back(mat_to_quat(m, iso));
        }
    }

    std::vector<uint64_t> out;
    for (size_t t = 0; t < slots; ++t) {
        for (const Quat& q : slot_sets[t]) {
            std::vector<Quat> comps(slots, Quat{0, 0, 0, 0});
            comps[t] = q;
            out.push_back(qpack(crt_join_quat(comps, mod), n));
        }
    }
    return out;
}

bool dominates(const RingCtx& ring, const std::vector<uint64_t>& set,
               unsigned threads) {
    require(ring.size() <= (uint64_t(1) << 24),
            "full verification is limited to rings with at most 2^24 elements");
    require(!set.empty(), "the candidate set must be nonempty");
    std::vector<uint64_t> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    for (uint64_t w : sorted)
        require(w != 0 && ring.is_zero_divisor(w),
                "set members must be nonzero zero divisors");

    std::atomic<bool> all_ok{true};
    parallel_ranges(ring.size(), threads, [&](size_t lo, size_t hi) {
        for (uint64_t x = lo; x < hi; ++x) {
            if (x == 0 || !ring.is_zero_divisor(x)) continue;
            if (std::binary_search(sorted.begin(), sorted.end(), x)) continue;
            bool hit = false;
            for (uint64_t w : sorted) {
                if (ring.mul(x, w) == 0 || ring.mul(w, x) == 0) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                all_ok.store(false, std::memory_order_relaxed);
                return;
            }
        }
    });
    return all_ok.load();
}

std::vector<uint64_t> expand_witness(const ZdGraph& g, const TwinPartition& t,
                                     const DominationResult& r) {
    std::vector<uint64_t> out;
    for (auto [cls, cnt] : r.witness) {
        require(cls < t.classes.size(), "witness class out of range");
        const auto& mem = t.classes[cls];
        require(cnt <= mem.size(), "witness count exceeds the class size");
        for (uint64_t k = 0; k < cnt; ++k) out.push_back(g.verts[mem[k]]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> expand_witness(const ComposedClasses& cc,
                                     const DominationResult& r) {
    std::vector<uint64_t> out;
    for (auto [cls, cnt] : r.witness) {
        require(cls < cc.twins.count, "witness class out of range");
        auto mem = class_members(cc, cls, cc.twins.sizes[cls]);
        require(cnt <= mem.size(), "witness count exceeds the class size");
        for (uint64_t k = 0; k < cnt; ++k) out.push_back(mem[k]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace lzdg
