#include "automorphism.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "errors.hpp"
#include "quaternion.hpp"

namespace lzdg {

namespace {

using S3 = std::array<uint8_t, 3>;

constexpr S3 kIdentity3{0, 1, 2};
constexpr S3 kDeltaSwap{0, 2, 1}; // fixes the power tag, swaps the deltas

S3 compose3(const S3& a, const S3& b) { // (a b)(x) = a(b(x))
    return S3{a[b[0]], a[b[1]], a[b[2]]};
}

BigInt factorial(uint64_t k) {
    BigInt r = 1;
    for (uint64_t i = 2; i <= k; ++i) r *= i;
    return r;
}

} // namespace

LabeledClasses labeled_compressed(unsigned s) {
    Structural2Adic st = structural_2adic(s);
    LabeledClasses lc;
    lc.s = s;
    lc.cg = compress_classes(st.twins);
    uint32_t merged = lc.cg.merged.count;
    lc.vtags.assign(merged, {});
    lc.vert_of.assign(s, {});
    for (unsigned l = 0; l < s; ++l) lc.vert_of[l].fill(UINT32_MAX);
    for (uint32_t v = 0; v < merged; ++v)
        for (uint32_t raw : lc.cg.subclasses[v]) {
            SlotClasses::Tag t = st.tags[raw];
            lc.vtags[v].push_back(t);
            lc.vert_of[t.l][unsigned(t.pi)] = v;
        }
    // the deepest delta-minus class coincides with delta-plus as an
    // element set, so its tag slot aliases the folded class
    lc.vert_of[s - 1][unsigned(PiTag::DM)] =
        lc.vert_of[s - 1][unsigned(PiTag::DP)];
    return lc;
}

AutGroupSummary find_automorphisms(const ClassGraph& g, uint64_t cap) {
    uint32_t n = g.count;
    require(n >= 1 && n <= 64, "automorphism search handles 1..64 vertices");

    std::vector<uint64_t> amask(n, 0);
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = 0; v < n; ++v)
            if (g.cls_adjacent(u, v)) amask[u] |= uint64_t(1) << v;

    // iterated neighborhood color refinement; colors are automorphism
    // invariants, so candidate images share the vertex color
    std::vector<uint32_t> color(n, 0);
    for (uint32_t u = 0; u < n; ++u) color[u] = uint32_t(std::popcount(amask[u]));
    for (uint32_t round = 0; round < n; ++round) {
        std::map<std::vector<uint32_t>, uint32_t> ids;
        std::vector<uint32_t> next(n);
        for (uint32_t u = 0; u < n; ++u) {
            std::vector<uint32_t> sig{color[u]};
            std::vector<uint32_t> nb;
            for (uint32_t v = 0; v < n; ++v)
                if ((amask[u] >> v) & 1) nb.push_back(color[v]);
            std::sort(nb.begin(), nb.end());
            sig.insert(sig.end(), nb.begin(), nb.end());
            auto it = ids.find(sig);
            if (it == ids.end()) it = ids.emplace(sig, uint32_t(ids.size())).first;
            next[u] = it->second;
        }
        bool changed = false;
        for (uint32_t u = 0; u < n; ++u) changed |= next[u] != color[u];
        color = next;
        if (!changed) break;
    }

    std::vector<uint32_t> cls_size(n, 0);
    std::map<uint32_t, uint32_t> color_count;
    for (uint32_t u = 0; u < n; ++u) ++color_count[color[u]];
    for (uint32_t u = 0; u < n; ++u) cls_size[u] = color_count[color[u]];
    std::vector<uint32_t> ord(n);
    for (uint32_t u = 0; u < n; ++u) ord[u] = u;
    std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
        if (cls_size[a] != cls_size[b]) return cls_size[a] < cls_size[b];
        return a < b;
    });

    AutGroupSummary out;
    std::vector<uint8_t> image(n, 0);
    uint64_t used = 0;

    auto dfs = [&](auto&& self, uint32_t depth) -> void {
        if (depth == n) {
            if (out.autos.size() >= cap)
                throw resource_limit(
                    "automorphism group larger than the configured cap");
            Perm p(n);
            for (uint32_t u = 0; u < n; ++u) p[u] = image[u];
            out.autos.push_back(std::move(p));
            return;
        }
        uint32_t v = ord[depth];
        for (uint32_t w = 0; w < n; ++w) {
            if ((used >> w) & 1) continue;
            if (color[w] != color[v]) continue;
            bool ok = true;
            for (uint32_t e = 0; e < depth && ok; ++e) {
                uint32_t u = ord[e];
                bool a1 = (amask[v] >> u) & 1;
                bool a2 = (amask[w] >> image[u]) & 1;
                ok = a1 == a2;
            }
            if (!ok) continue;
            image[v] = uint8_t(w);
            used |= uint64_t(1) << w;
            self(self, depth + 1);
            used &= ~(uint64_t(1) << w);
        }
    };
    dfs(dfs, 0);

    std::sort(out.autos.begin(), out.autos.end());
    out.order = out.autos.size();

    std::set<Perm> members(out.autos.begin(), out.autos.end());
    out.group_closed = true;
    Perm id(n);
    for (uint32_t u = 0; u < n; ++u) id[u] = uint8_t(u);
    if (!members.count(id)) out.group_closed = false;
    for (const Perm& a : out.autos) {
        Perm inv(n);
        for (uint32_t u = 0; u < n; ++u) inv[a[u]] = uint8_t(u);
        if (!members.count(inv)) out.group_closed = false;
        for (const Perm& b : out.autos) {
            Perm c(n);
            for (uint32_t u = 0; u < n; ++u) c[u] = a[b[u]];
            if (!members.count(c)) {
                out.group_closed = false;
                break;
            }
        }
        if (!out.group_closed) break;
    }
    return out;
}

bool is_automorphism(const ClassGraph& g, const Perm& f) {
    uint32_t n = g.count;
    if (f.size() != n) return false;
    std::vector<uint8_t> seen(n, 0);
    for (uint32_t u = 0; u < n; ++u) {
        if (f[u] >= n || seen[f[u]]) return false;
        seen[f[u]] = 1;
    }
    for (uint32_t u = 0; u < n; ++u)
        for (uint32_t v = u + 1; v < n; ++v)
            if (g.cls_adjacent(u, v) != g.cls_adjacent(f[u], f[v]))
                return false;
    return true;
}

uint64_t predicted_order(unsigned s) {
    require(s >= 1, "s must be positive");
    if (s == 1) return 1;
    uint64_t pow6 = 1;
    for (unsigned k = 1; k < s; ++k) pow6 *= 6;
    return s % 2 == 0 ? pow6 * 2 : pow6;
}

namespace {

// read the tag triple of P_m or Q_n as compressed vertex ids
std::array<uint32_t, 3> p_verts(const LabeledClasses& lc, unsigned m) {
    return {lc.vert_of[m][unsigned(PiTag::I1)],
            lc.vert_of[m][unsigned(PiTag::J1)],
            lc.vert_of[m][unsigned(PiTag::K1)]};
}

std::array<uint32_t, 3> q_verts(const LabeledClasses& lc, unsigned n) {
    return {lc.vert_of[n][unsigned(PiTag::One)],
            lc.vert_of[n - 1][unsigned(PiTag::DP)],
            lc.vert_of[n - 1][unsigned(PiTag::DM)]};
}

bool stabilizes(const Perm& f, const std::array<uint32_t, 3>& verts) {
    std::vector<uint32_t> set(verts.begin(), verts.end());
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    std::vector<uint32_t> img;
    for (uint32_t v : set) img.push_back(f[v]);
    std::sort(img.begin(), img.end());
    return img == set;
}

// the induced S3 element on a fully distinct tag triple; a merged
// triple reads as the identity
bool induced_s3(const Perm& f, const std::array<uint32_t, 3>& verts, S3& out,
                std::string& err) {
    if (verts[0] == verts[1] && verts[1] == verts[2]) {
        out = kIdentity3;
        return true;
    }
    if (verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2]) {
        err = "partially merged tag triple";
        return false;
    }
    for (unsigned a = 0; a < 3; ++a) {
        uint32_t img = f[verts[a]];
        bool found = false;
        for (unsigned b = 0; b < 3; ++b)
            if (verts[b] == img) {
                out[a] = uint8_t(b);
                found = true;
            }
        if (!found) {
            err = "image leaves the tag triple";
            return false;
        }
    }
    return true;
}

} // namespace

CheckReport check_stabilization(const LabeledClasses& lc, const Perm& f) {
    CheckReport rep;
    unsigned s = lc.s;
    auto fail = [&](std::string d) {
        rep.pass = false;
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += std::move(d);
    };
    for (unsigned m = 0; m < s; ++m)
        if (!stabilizes(f, p_verts(lc, m)))
            fail("P_" + std::to_string(m) + " not stabilized");
    for (unsigned n = 1; n < s; ++n)
        if (!stabilizes(f, q_verts(lc, n)))
            fail("Q_" + std::to_string(n) + " not stabilized");

    uint32_t deep_delta = lc.vert_of[s - 1][unsigned(PiTag::DP)];
    if (f[deep_delta] != deep_delta)
        fail("deepest delta class moved");
    if (s % 2 == 0) {
        uint32_t mid = lc.vert_of[s / 2][unsigned(PiTag::One)];
        if (f[mid] != mid) fail("middle power class moved");
        auto qv = q_verts(lc, s / 2);
        std::vector<uint32_t> pair{qv[1], qv[2]};
        std::sort(pair.begin(), pair.end());
        std::vector<uint32_t> img{f[qv[1]], f[qv[2]]};
        std::sort(img.begin(), img.end());
        if (img != pair) fail("middle delta pair not stabilized");
    } else {
        auto pv = p_verts(lc, (s - 1) / 2);
        if (!(pv[0] == pv[1] && pv[1] == pv[2]))
            fail("middle P triple did not merge to one vertex");
        else if (f[pv[0]] != pv[0])
            fail("merged middle P vertex moved");
    }
    return rep;
}

CheckReport check_pairing(const LabeledClasses& lc, const Perm& f) {
    CheckReport rep;
    unsigned s = lc.s;
    auto fail = [&](std::string d) {
        rep.pass = false;
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += std::move(d);
    };

    std::vector<S3> gp(s), hq(s); // hq indexed by n >= 1
    std::string err;
    for (unsigned m = 0; m < s; ++m)
        if (!induced_s3(f, p_verts(lc, m), gp[m], err))
            fail("P_" + std::to_string(m) + ": " + err);
    for (unsigned n = 1; n < s; ++n)
        if (!induced_s3(f, q_verts(lc, n), hq[n], err))
            fail("Q_" + std::to_string(n) + ": " + err);
    if (!rep.pass) return rep;

    for (unsigned m = 0; m < s; ++m) {
        unsigned mm = s - 1 - m;
        if (gp[m] != gp[mm])
            fail("P_" + std::to_string(m) + " and P_" + std::to_string(mm) +
                 " induce different elements");
    }
    for (unsigned n = 1; n < s; ++n) {
        unsigned nn = s - n;
        if (nn < 1 || nn > s - 1) continue;
        S3 conj = compose3(kDeltaSwap, compose3(hq[n], kDeltaSwap));
        if (conj != hq[nn])
            fail("Q_" + std::to_string(n) + " conjugate differs from Q_" +
                 std::to_string(nn));
    }
    if (s % 2 == 0) {
        const S3& mid = hq[s / 2];
        if (!(mid == kIdentity3 || mid == kDeltaSwap))
            fail("middle Q restriction is neither identity nor the delta swap");
    } else if (s >= 3) {
        if (gp[(s - 1) / 2] != kIdentity3)
            fail("middle P restriction is not the identity");
    }
    return rep;
}

BigInt reg_order(const TwinPartition& t) {
    BigInt r = 1;
    for (const auto& cls : t.classes) r *= factorial(cls.size());
    return r;
}

BigInt reg_order_structural(unsigned s) {
    Structural2Adic st = structural_2adic(s);
    CompressedGraph cg = compress_classes(st.twins);
    BigInt r = 1;
    for (uint64_t sz : st.twins.sizes) r *= factorial(sz);
    for (const auto& sub : cg.subclasses) r *= factorial(sub.size());
    return r;
}

std::vector<uint32_t> lift_permutation(const TwinPartition& t, const Perm& f) {
    size_t n = t.class_of.size();
    require(f.size() == t.classes.size(),
            "permutation size must match the class count");
    std::vector<uint32_t> phi(n, 0);
    for (uint32_t c = 0; c < t.classes.size(); ++c) {
        const auto& src = t.classes[c];
        const auto& dst = t.classes[f[c]];
        require(src.size() == dst.size(),
                "class map must preserve class sizes");
        for (size_t k = 0; k < src.size(); ++k) phi[src[k]] = dst[k];
    }
    return phi;
}

bool vertex_permutation_preserves(const ZdGraph& g,
                                  const std::vector<uint32_t>& phi) {
    size_t n = g.verts.size();
    if (phi.size() != n) return false;
    for (size_t u = 0; u < n; ++u)
        for (size_t v = u + 1; v < n; ++v)
            if (g.adjacent(u, v) != g.adjacent(phi[u], phi[v])) return false;
    return true;
}

bool lift_and_check(const ZdGraph& g, const TwinPartition& t, const Perm& f) {
    return vertex_permutation_preserves(g, lift_permutation(t, f));
}

RegularSampleReport sample_regular_automorphisms(const ZdGraph& g,
                                                 const TwinPartition& t,
                                                 uint64_t trials,
                                                 uint64_t seed) {
    RegularSampleReport rep;
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    size_t n = t.class_of.size();
    for (uint64_t it = 0; it < trials; ++it) {
        std::vector<uint32_t> phi(n, 0);
        for (const auto& cls : t.classes) {
            std::vector<uint32_t> dst = cls;
            std::shuffle(dst.begin(), dst.end(), rng);
            for (size_t k = 0; k < cls.size(); ++k) phi[cls[k]] = dst[k];
        }
        if (vertex_permutation_preserves(g, phi)) ++rep.passed;
    }
    rep.all_pass = rep.passed == rep.trials;
    return rep;
}

} // namespace lzdg
