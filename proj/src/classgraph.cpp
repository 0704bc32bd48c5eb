#include "classgraph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "errors.hpp"
#include "parallel.hpp"

namespace lzdg {

namespace {

bool is_power_of_two(uint64_t n) { return n >= 2 && (n & (n - 1)) == 0; }

unsigned log2_exact(uint64_t n) {
    unsigned s = 0;
    while ((uint64_t{1} << s) < n) ++s;
    return s;
}

uint64_t fnv_extend(uint64_t h, const std::vector<uint32_t>& data) {
    for (uint32_t v : data) {
        for (int byte = 0; byte < 4; ++byte) {
            h ^= (v >> (8 * byte)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    return h;
}

SlotClasses slot_classes_2adic(const RingCtx& slot, bool enumerate) {
    unsigned s = log2_exact(slot.n);
    SlotClasses sc;
    sc.ring = slot;
    sc.has_tags = true;

    // class 0: zero, class 1: units, then [2^l pi] in canonical order
    sc.sizes = {1, unit_count_2adic(s)};
    sc.reps = {0, qpack(Quat{1, 0, 0, 0}, slot.n)};
    sc.tags.resize(2);
    std::vector<std::array<uint32_t, kPiCount>> id_of(
        s, {UINT32_MAX, UINT32_MAX, UINT32_MAX, UINT32_MAX, UINT32_MAX,
            UINT32_MAX});
    for (unsigned l = 0; l < s; ++l) {
        for (int pi = 0; pi < kPiCount; ++pi) {
            PiTag tag = static_cast<PiTag>(pi);
            if (l == 0 && tag == PiTag::One) continue; // units
            if (s == 1 && tag == PiTag::DM) continue;  // coincides with DP mod 2
            if (s >= 2 && l == s - 1 && tag == PiTag::DM) continue; // same set as DP
            uint32_t id = static_cast<uint32_t>(sc.sizes.size());
            id_of[l][pi] = id;
            sc.sizes.push_back(sim_class_size(s, l, tag));
            Quat rep = qscale(uint64_t{1} << l, pi_element(tag, slot.n), slot.n);
            sc.reps.push_back(qpack(rep, slot.n));
            sc.tags.push_back(SlotClasses::Tag{l, tag});
        }
    }
    // the DM tag at l = s-1 names the same elements as DP
    if (s >= 2) id_of[s - 1][static_cast<int>(PiTag::DM)] =
        id_of[s - 1][static_cast<int>(PiTag::DP)];
    if (s == 1) id_of[0][static_cast<int>(PiTag::DM)] =
        id_of[0][static_cast<int>(PiTag::DP)];

    sc.count = static_cast<uint32_t>(sc.sizes.size());
    check_internal(sc.count == 6 * s - 2 + 2, "2-adic class count is 6s");

    if (enumerate) {
        uint64_t total = slot.size();
        require(total <= (uint64_t{1} << 24),
                "2-adic slot too large to enumerate");
        sc.class_of.assign(total, 0);
        std::vector<uint64_t> counted(sc.count, 0);
        for (uint64_t x = 1; x < total; ++x) {
            Quat q = qunpack(x, slot.n);
            uint32_t id;
            if (q_is_unit(q, slot.n)) {
                id = 1;
            } else {
                QuatFactorization f = factorize_2adic(q, s);
                id = id_of[f.l][static_cast<int>(f.pi)];
                check_internal(id != UINT32_MAX, "factorization tag is known");
            }
            sc.class_of[x] = id;
            ++counted[id];
        }
        counted[0] = 1;
        for (uint32_t c = 0; c < sc.count; ++c)
            check_internal(counted[c] == sc.sizes[c],
                           "orbit size formula matches enumeration");
    }

    sc.is_zero.assign(sc.count, 0);
    sc.is_unit.assign(sc.count, 0);
    sc.is_zero[0] = 1;
    sc.is_unit[1] = 1;

    sc.zright = BitRows(sc.count, sc.count);
    for (uint32_t c = 0; c < sc.count; ++c)
        for (uint32_t d = 0; d < sc.count; ++d)
            if (slot.mul(sc.reps[c], sc.reps[d]) == 0) sc.zright.set(c, d);
    return sc;
}

SlotClasses slot_classes_odd(const RingCtx& slot) {
    uint64_t ps = slot.n;
    uint64_t p = slot.kind == RingKind::MatModPs ? slot.p
                                                 : factorize(ps).factors[0].first;
    unsigned s = slot.kind == RingKind::MatModPs
                     ? slot.s
                     : factorize(ps).factors[0].second;
    require(p % 2 == 1, "odd slot expected");

    QuatMatIso iso;
    if (slot.kind == RingKind::QuatModN) iso = make_iso(p, s);

    uint64_t total = slot.size();
    require(total <= (uint64_t{1} << 24), "slot too large to enumerate");
    uint64_t pairs = ps * ps;

    SlotClasses sc;
    sc.ring = slot;
    sc.class_of.assign(total, UINT32_MAX);

    // kernel signatures: the right annihilator of a matrix is a function
    // of its column kernel, the left annihilator of its row kernel
    std::vector<std::vector<uint32_t>> rsigs, lsigs;
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;

    std::vector<uint32_t> rsig, lsig;
    rsig.reserve(pairs);
    lsig.reserve(pairs);
    for (uint64_t x = 0; x < total; ++x) {
        Mat2 M = slot.kind == RingKind::MatModPs
                     ? munpack(x, ps)
                     : quat_to_mat(qunpack(x, ps), iso);
        rsig.clear();
        lsig.clear();
        for (uint64_t v1 = 0; v1 < ps; ++v1)
            for (uint64_t v2 = 0; v2 < ps; ++v2) {
                if ((M.e11 * v1 + M.e12 * v2) % ps == 0 &&
                    (M.e21 * v1 + M.e22 * v2) % ps == 0)
                    rsig.push_back(static_cast<uint32_t>(v1 * ps + v2));
                if ((v1 * M.e11 + v2 * M.e21) % ps == 0 &&
                    (v1 * M.e12 + v2 * M.e22) % ps == 0)
                    lsig.push_back(static_cast<uint32_t>(v1 * ps + v2));
            }
        uint64_t h = fnv_extend(fnv_extend(1469598103934665603ull, rsig) * 31,
                                lsig);
        uint32_t id = UINT32_MAX;
        auto bucket = by_hash.find(h);
        if (bucket != by_hash.end()) {
            for (uint32_t cand : bucket->second)
                if (rsigs[cand] == rsig && lsigs[cand] == lsig) {
                    id = cand;
                    break;
                }
        }
        if (id == UINT32_MAX) {
            id = static_cast<uint32_t>(rsigs.size());
            rsigs.push_back(rsig);
            lsigs.push_back(lsig);
            by_hash[h].push_back(id);
            sc.reps.push_back(x);
            sc.sizes.push_back(0);
        }
        sc.class_of[x] = id;
        ++sc.sizes[id];
    }

    sc.count = static_cast<uint32_t>(sc.sizes.size());
    check_internal(sc.class_of[0] == 0, "zero element classifies first");
    check_internal(rsigs[0].size() == pairs, "zero class kernel is everything");

    // move the unit class (kernel {0} on both sides) to index 1
    uint32_t unit_id = UINT32_MAX;
    for (uint32_t c = 0; c < sc.count; ++c)
        if (rsigs[c].size() == 1 && lsigs[c].size() == 1) {
            unit_id = c;
            break;
        }
    check_internal(unit_id != UINT32_MAX, "unit class exists");
    if (unit_id != 1) {
        std::swap(sc.reps[unit_id], sc.reps[1]);
        std::swap(sc.sizes[unit_id], sc.sizes[1]);
        std::swap(rsigs[unit_id], rsigs[1]);
        std::swap(lsigs[unit_id], lsigs[1]);
        for (auto& c : sc.class_of) {
            if (c == 1)
                c = unit_id;
            else if (c == unit_id)
                c = 1;
        }
    }

    sc.is_zero.assign(sc.count, 0);
    sc.is_unit.assign(sc.count, 0);
    sc.is_zero[0] = 1;
    sc.is_unit[1] = 1;

    sc.zright = BitRows(sc.count, sc.count);
    for (uint32_t c = 0; c < sc.count; ++c)
        for (uint32_t d = 0; d < sc.count; ++d)
            if (slot.mul(sc.reps[c], sc.reps[d]) == 0) sc.zright.set(c, d);
    return sc;
}

} // namespace

SlotClasses slot_classes(const RingCtx& slot, bool enumerate) {
    if (slot.kind == RingKind::QuatModN && is_power_of_two(slot.n))
        return slot_classes_2adic(slot, enumerate);
    require(enumerate, "odd slots always enumerate");
    return slot_classes_odd(slot);
}

ComposedClasses composed_classes(uint64_t n, bool enumerate_slots) {
    ComposedClasses cc;
    cc.mod = factorize(n);
    for (const auto& [p, e] : cc.mod.factors) {
        uint64_t pe = 1;
        for (unsigned t = 0; t < e; ++t) pe *= p;
        RingCtx slot = make_quat_ring(pe);
        bool enumerate = enumerate_slots || p != 2;
        cc.slots.push_back(slot_classes(slot, enumerate));
    }

    size_t k = cc.slots.size();
    uint64_t tuple_total = 1;
    for (const auto& sc : cc.slots) tuple_total *= sc.count;
    require(tuple_total <= 20000, "composed class space too large");

    // enumerate tuples lexicographically, skipping all-zero and all-unit
    std::vector<std::vector<uint32_t>> tuples;
    std::vector<uint64_t> tsizes;
    std::vector<uint32_t> cur(k, 0);
    for (uint64_t t = 0; t < tuple_total; ++t) {
        uint64_t rem = t;
        for (size_t i = k; i-- > 0;) {
            cur[i] = static_cast<uint32_t>(rem % cc.slots[i].count);
            rem /= cc.slots[i].count;
        }
        bool all_zero = true, all_unit = true;
        uint64_t size = 1;
        for (size_t i = 0; i < k; ++i) {
            all_zero = all_zero && cc.slots[i].is_zero[cur[i]];
            all_unit = all_unit && cc.slots[i].is_unit[cur[i]];
            size *= cc.slots[i].sizes[cur[i]];
        }
        if (all_zero || all_unit) continue;
        tuples.push_back(cur);
        tsizes.push_back(size);
    }

    uint32_t tcount = static_cast<uint32_t>(tuples.size());
    BitRows right(tcount, tcount), left(tcount, tcount);
    for (uint32_t a = 0; a < tcount; ++a)
        for (uint32_t b = 0; b < tcount; ++b) {
            bool zero = true;
            for (size_t i = 0; i < k && zero; ++i)
                zero = cc.slots[i].zright.get(tuples[a][i], tuples[b][i]);
            if (zero) {
                right.set(a, b);
                left.set(b, a);
            }
        }

    // twin merge: tuples with equal right and left class rows describe
    // elements with equal annihilator sets
    std::vector<uint32_t> group_of(tcount, UINT32_MAX);
    std::vector<std::vector<uint32_t>> groups;
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;
    for (uint32_t a = 0; a < tcount; ++a) {
        uint64_t h = right.hash_row(a) * 1000003ull + left.hash_row(a);
        uint32_t gid = UINT32_MAX;
        auto bucket = by_hash.find(h);
        if (bucket != by_hash.end()) {
            for (uint32_t cand : bucket->second) {
                uint32_t b = groups[cand][0];
                if (right.rows_equal(a, b) && left.rows_equal(a, b)) {
                    gid = cand;
                    break;
                }
            }
        }
        if (gid == UINT32_MAX) {
            gid = static_cast<uint32_t>(groups.size());
            groups.push_back({});
            by_hash[h].push_back(gid);
        }
        groups[gid].push_back(a);
        group_of[a] = gid;
    }

    uint32_t gcount = static_cast<uint32_t>(groups.size());
    ClassGraph& tw = cc.twins;
    tw.count = gcount;
    tw.sizes.assign(gcount, 0);
    tw.self_adjacent.assign(gcount, 0);
    tw.adj = BitRows(gcount, gcount);
    tw.rep_elems.resize(gcount);
    tw.labels.resize(gcount);
    cc.tuples.resize(gcount);

    RingCtx whole = make_quat_ring(n);
    for (uint32_t g = 0; g < gcount; ++g) {
        for (uint32_t a : groups[g]) {
            tw.sizes[g] += tsizes[a];
            cc.tuples[g].push_back(tuples[a]);
        }
        uint32_t rep_tuple = groups[g][0];
        std::vector<Quat> parts;
        for (size_t i = 0; i < k; ++i)
            parts.push_back(
                qunpack(cc.slots[i].reps[tuples[rep_tuple][i]],
                        cc.slots[i].ring.n));
        Quat rep = crt_join_quat(parts, cc.mod);
        tw.rep_elems[g] = qpack(rep, n);
        tw.labels[g] = whole.elem_str(tw.rep_elems[g]);
        tw.self_adjacent[g] = right.get(rep_tuple, rep_tuple) ? 1 : 0;
        if (tw.self_adjacent[g]) tw.adj.set(g, g);
    }
    for (uint32_t a = 0; a < tcount; ++a)
        for (uint32_t b = 0; b < tcount; ++b)
            if (right.get(a, b) && group_of[a] != group_of[b]) {
                tw.adj.set(group_of[a], group_of[b]);
                tw.adj.set(group_of[b], group_of[a]);
            }
    return cc;
}

std::vector<uint64_t> class_members(const ComposedClasses& cc, uint32_t cls,
                                    uint64_t cap) {
    require(cls < cc.twins.count, "class index out of range");
    require(cc.twins.sizes[cls] <= cap, "class too large to expand");
    size_t k = cc.slots.size();
    std::vector<uint64_t> out;
    out.reserve(cc.twins.sizes[cls]);

    for (const auto& tuple : cc.tuples[cls]) {
        std::vector<std::vector<uint64_t>> members(k);
        for (size_t i = 0; i < k; ++i) {
            const SlotClasses& sc = cc.slots[i];
            require(!sc.class_of.empty(), "slot lacks element classification");
            for (uint64_t x = 0; x < sc.ring.size(); ++x)
                if (sc.class_of[x] == tuple[i]) members[i].push_back(x);
        }
        std::vector<size_t> idx(k, 0);
        bool more = true;
        while (more) {
            std::vector<Quat> parts;
            for (size_t i = 0; i < k; ++i)
                parts.push_back(qunpack(members[i][idx[i]], cc.slots[i].ring.n));
            out.push_back(qpack(crt_join_quat(parts, cc.mod), cc.mod.n));
            more = false;
            for (size_t pos = k; pos-- > 0;) {
                if (++idx[pos] < members[pos].size()) {
                    more = true;
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    std::sort(out.begin(), out.end());
    check_internal(out.size() == cc.twins.sizes[cls],
                   "expansion matches class size");
    return out;
}

Structural2Adic structural_2adic(unsigned s) {
    require(s >= 1 && s <= 12, "s out of supported range");
    RingCtx ring = make_quat_ring(uint64_t{1} << s);
    SlotClasses sc = slot_classes_2adic(ring, false);

    Structural2Adic st;
    st.s = s;
    uint32_t zd = sc.count - 2;
    ClassGraph& tw = st.twins;
    tw.count = zd;
    tw.sizes.assign(sc.sizes.begin() + 2, sc.sizes.end());
    tw.rep_elems.assign(sc.reps.begin() + 2, sc.reps.end());
    st.tags.assign(sc.tags.begin() + 2, sc.tags.end());
    tw.self_adjacent.assign(zd, 0);
    tw.adj = BitRows(zd, zd);
    tw.labels.resize(zd);
    for (uint32_t c = 0; c < zd; ++c) {
        tw.labels[c] = ring.elem_str(tw.rep_elems[c]);
        for (uint32_t d = 0; d < zd; ++d)
            if (sc.zright.get(c + 2, d + 2)) {
                tw.adj.set(c, d);
                tw.adj.set(d, c); // the ring is reversible
            }
        tw.self_adjacent[c] = tw.adj.get(c, c) ? 1 : 0;
    }
    return st;
}

bool verify_structural_twins(unsigned s, unsigned threads) {
    require(s >= 1 && s <= 4, "streaming check supports s <= 4");
    uint64_t n = uint64_t{1} << s;
    uint64_t total = n * n * n * n;
    uint64_t mask = n - 1;
    Structural2Adic st = structural_2adic(s);
    uint32_t C = st.twins.count;

    // classify every element; UINT16_MAX marks units and zero
    std::vector<uint16_t> cls_of(total, UINT16_MAX);
    std::vector<std::array<uint32_t, kPiCount>> id_of(
        s, {UINT32_MAX, UINT32_MAX, UINT32_MAX, UINT32_MAX, UINT32_MAX,
            UINT32_MAX});
    for (uint32_t c = 0; c < C; ++c)
        id_of[st.tags[c].l][static_cast<int>(st.tags[c].pi)] = c;
    std::vector<uint32_t> zd;
    zd.reserve(total);
    for (uint64_t x = 1; x < total; ++x) {
        Quat q = qunpack(x, n);
        if (q_is_unit(q, n)) continue;
        QuatFactorization f = factorize_2adic(q, s);
        uint32_t id = id_of[f.l][static_cast<int>(f.pi)];
        check_internal(id != UINT32_MAX, "class tag is registered");
        cls_of[x] = static_cast<uint16_t>(id);
        zd.push_back(static_cast<uint32_t>(x));
    }

    // tally zero products over all ordered vertex pairs, diagonal included
    size_t V = zd.size();
    unsigned tn = resolve_threads(threads);
    std::vector<std::vector<uint64_t>> tallies(tn,
                                               std::vector<uint64_t>(C * C, 0));
    std::vector<Quat> el(V);
    for (size_t u = 0; u < V; ++u) el[u] = qunpack(zd[u], n);
    {
        std::vector<std::thread> pool;
        size_t chunk = (V + tn - 1) / tn;
        for (unsigned t = 0; t < tn; ++t) {
            size_t lo = std::min(V, t * chunk), hi = std::min(V, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi, t] {
                std::vector<uint64_t>& tally = tallies[t];
                for (size_t u = lo; u < hi; ++u) {
                    const Quat& x = el[u];
                    uint32_t cu = cls_of[zd[u]];
                    for (size_t w = 0; w < V; ++w) {
                        const Quat& y = el[w];
                        uint64_t a = (x.a * y.a + (n - x.b) * y.b +
                                      (n - x.c) * y.c + (n - x.d) * y.d) &
                                     mask;
                        uint64_t b = (x.a * y.b + x.b * y.a + x.c * y.d +
                                      (n - x.d) * y.c) &
                                     mask;
                        uint64_t c = (x.a * y.c + x.c * y.a + x.d * y.b +
                                      (n - x.b) * y.d) &
                                     mask;
                        uint64_t d = (x.a * y.d + x.d * y.a + x.b * y.c +
                                      (n - x.c) * y.b) &
                                     mask;
                        if ((a | b | c | d) == 0)
                            ++tally[cu * C + cls_of[zd[w]]];
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    std::vector<uint64_t> tally(C * C, 0);
    for (const auto& part : tallies)
        for (size_t i = 0; i < tally.size(); ++i) tally[i] += part[i];

    // all-or-none per ordered class pair
    for (uint32_t a = 0; a < C; ++a)
        for (uint32_t b = 0; b < C; ++b) {
            uint64_t hits = tally[a * C + b];
            uint64_t full = st.twins.sizes[a] * st.twins.sizes[b];
            if (hits != 0 && hits != full) return false;
            bool rep_zero =
                qmul(qunpack(st.twins.rep_elems[a], n),
                     qunpack(st.twins.rep_elems[b], n), n)
                    .is_zero();
            if (rep_zero != (hits == full && full > 0)) return false;
        }

    // annihilator class rows must separate the classes
    for (uint32_t a = 0; a < C; ++a)
        for (uint32_t b = a + 1; b < C; ++b) {
            bool same = true;
            for (uint32_t c = 0; c < C && same; ++c)
                same = (tally[a * C + c] != 0) == (tally[b * C + c] != 0) &&
                       (tally[c * C + a] != 0) == (tally[c * C + b] != 0);
            if (same) return false;
        }
    return true;
}

} // namespace lzdg
