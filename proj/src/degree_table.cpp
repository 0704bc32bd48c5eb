#include "degree_table.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"

namespace lzdg {

uint64_t expected_degree(unsigned s, unsigned l, PiTag pi) {
    require(s >= 1 && l < s, "level out of range");
    bool even = s % 2 == 0;
    uint64_t m = l;
    switch (pi) {
    case PiTag::One:
        require(l >= 1, "the power family starts at level 1");
        if (even) return 2 * m < s ? 6 * m - 1 : 6 * m - 2;
        return 2 * m < s ? 6 * m - 1 : 6 * m - 4;
    case PiTag::I1:
    case PiTag::J1:
    case PiTag::K1:
        if (even) return 2 * m < s - 1 ? 6 * m + 2 : 6 * m + 1;
        if (2 * m < s - 1) return 6 * m + 2;
        if (2 * m == s - 1) return 6 * m + 1;
        return 6 * m - 1;
    case PiTag::DP:
    case PiTag::DM:
        if (m == s - 1) {
            // adjacent to every other compressed vertex
            uint64_t verts = even ? 6 * uint64_t(s) - 2 : 6 * uint64_t(s) - 4;
            if (s == 1) verts = 2;
            return verts - 1;
        }
        if (even) return 2 * m < s - 1 ? 6 * m + 5 : 6 * m + 4;
        return 2 * m < s - 1 ? 6 * m + 5 : 6 * m + 2;
    }
    throw internal_error("unhandled tag");
}

std::vector<uint64_t> expected_degrees(const LabeledClasses& lc) {
    std::vector<uint64_t> out;
    for (uint32_t v = 0; v < lc.cg.merged.count; ++v) {
        require(!lc.vtags[v].empty(), "every compressed vertex carries a tag");
        const auto& t = lc.vtags[v][0];
        out.push_back(expected_degree(lc.s, t.l, t.pi));
    }
    return out;
}

DegreeCheck check_degree_table(unsigned s) {
    LabeledClasses lc = labeled_compressed(s);
    const ClassGraph& g = lc.cg.merged;
    std::vector<uint64_t> expect = expected_degrees(lc);
    DegreeCheck res;
    for (uint32_t v = 0; v < g.count; ++v) {
        uint64_t deg = 0;
        for (uint32_t w = 0; w < g.count; ++w)
            if (g.cls_adjacent(v, w)) ++deg;
        if (deg != expect[v]) {
            res.pass = false;
            res.mismatches.push_back(g.labels[v] + ": measured " +
                                     std::to_string(deg) + ", expected " +
                                     std::to_string(expect[v]));
        }
    }
    return res;
}

namespace {

struct RawIndex {
    unsigned s;
    std::vector<std::array<uint32_t, kPiCount>> id_of;

    explicit RawIndex(const Structural2Adic& st) : s(st.s) {
        id_of.assign(s, {});
        for (unsigned l = 0; l < s; ++l) id_of[l].fill(UINT32_MAX);
        for (uint32_t c = 0; c < st.tags.size(); ++c)
            id_of[st.tags[c].l][unsigned(st.tags[c].pi)] = c;
        id_of[s - 1][unsigned(PiTag::DM)] = id_of[s - 1][unsigned(PiTag::DP)];
        if (s == 1)
            id_of[0][unsigned(PiTag::DM)] = id_of[0][unsigned(PiTag::DP)];
    }

    uint32_t at(unsigned l, PiTag pi) const {
        uint32_t c = id_of[l][unsigned(pi)];
        check_internal(c != UINT32_MAX, "requested class exists");
        return c;
    }
};

const PiTag kD1[3] = {PiTag::I1, PiTag::J1, PiTag::K1};
const PiTag kD2[2] = {PiTag::DP, PiTag::DM};
const PiTag kD[5] = {PiTag::I1, PiTag::J1, PiTag::K1, PiTag::DP, PiTag::DM};

std::set<uint32_t> measured_neighbors(const ClassGraph& g, uint32_t c) {
    std::set<uint32_t> out;
    for (uint32_t d = 0; d < g.count; ++d)
        if (g.cls_adjacent(c, d)) out.insert(d);
    return out;
}

} // namespace

std::vector<NeighborClauseReport> neighbor_formula_check(unsigned s) {
    require(s >= 2 && s <= 8, "clause check covers 2 <= s <= 8");
    Structural2Adic st = structural_2adic(s);
    const ClassGraph& g = st.twins;
    RawIndex ix(st);

    std::vector<NeighborClauseReport> reports;
    auto run = [&](std::string clause,
                   const std::vector<std::pair<uint32_t, std::set<uint32_t>>>&
                       literal_cases,
                   const std::vector<std::pair<uint32_t, std::set<uint32_t>>>&
                       completed_cases,
                   std::string note) {
        NeighborClauseReport rep;
        rep.clause = std::move(clause);
        rep.literal_pass = true;
        for (const auto& [c, want] : literal_cases)
            if (measured_neighbors(g, c) != want) rep.literal_pass = false;
        rep.completed_pass = true;
        const auto& cases =
            completed_cases.empty() ? literal_cases : completed_cases;
        for (const auto& [c, want] : cases)
            if (measured_neighbors(g, c) != want) rep.completed_pass = false;
        rep.note = std::move(note);
        reports.push_back(std::move(rep));
    };

    using Case = std::pair<uint32_t, std::set<uint32_t>>;

    // clause (i): powers of two
    {
        std::vector<Case> cases;
        for (unsigned m = 1; m < s; ++m) {
            std::set<uint32_t> want;
            for (unsigned l = s - m; l < s; ++l) {
                want.insert(ix.at(l, PiTag::One));
                for (PiTag t : kD) want.insert(ix.at(l, t));
            }
            want.erase(ix.at(m, PiTag::One));
            cases.emplace_back(ix.at(m, PiTag::One), std::move(want));
        }
        run("(i) power classes", cases, {}, "literal reading");
    }
    // clause (ii): level-0 D1 classes
    {
        std::vector<Case> cases;
        for (PiTag a : kD1) {
            std::set<uint32_t> want{ix.at(s - 1, a), ix.at(s - 1, PiTag::DP)};
            cases.emplace_back(ix.at(0, a), std::move(want));
        }
        run("(ii) level-0 D1 classes", cases, {}, "literal reading");
    }
    // clause (iii): deeper D1 classes
    {
        std::vector<Case> cases;
        for (unsigned m = 1; m < s; ++m)
            for (PiTag a : kD1) {
                std::set<uint32_t> want;
                for (unsigned l = s - m; l < s; ++l) {
                    want.insert(ix.at(l, PiTag::One));
                    for (PiTag t : kD) want.insert(ix.at(l, t));
                }
                want.insert(ix.at(s - 1 - m, PiTag::DP));
                want.insert(ix.at(s - 1 - m, PiTag::DM));
                want.insert(ix.at(s - 1 - m, a));
                want.erase(ix.at(m, a));
                cases.emplace_back(ix.at(m, a), std::move(want));
            }
        run("(iii) deeper D1 classes", cases, {},
            "literal reading, including the level s-1 boundary");
    }
    // clause (iv): level-0 D2 classes
    {
        std::vector<Case> cases;
        for (PiTag b : kD2) {
            std::set<uint32_t> want;
            for (PiTag t : kD) want.insert(ix.at(s - 1, t));
            PiTag other = b == PiTag::DP ? PiTag::DM : PiTag::DP;
            want.insert(ix.at(s - 2, other));
            cases.emplace_back(ix.at(0, b), std::move(want));
        }
        run("(iv) level-0 D2 classes", cases, {}, "literal reading");
    }
    // clause (v): middle D2 classes
    {
        std::vector<Case> cases;
        for (unsigned m = 1; m + 1 < s; ++m)
            for (PiTag b : kD2) {
                std::set<uint32_t> want;
                for (unsigned l = s - m; l < s; ++l)
                    want.insert(ix.at(l, PiTag::One));
                for (unsigned l = s - 1 - m; l < s; ++l)
                    for (PiTag t : kD) want.insert(ix.at(l, t));
                PiTag other = b == PiTag::DP ? PiTag::DM : PiTag::DP;
                want.insert(ix.at(s - 2 - m, other));
                want.erase(ix.at(m, b));
                cases.emplace_back(ix.at(m, b), std::move(want));
            }
        run("(v) middle D2 classes", cases, {}, "literal reading");
    }
    // clause (vi): the deepest delta class; the literal union omits
    // the power classes even though every one of them annihilates it
    {
        std::vector<Case> literal, completed;
        uint32_t c = ix.at(s - 1, PiTag::DP);
        std::set<uint32_t> want;
        for (unsigned l = 0; l < s; ++l)
            for (PiTag t : kD) want.insert(ix.at(l, t));
        want.erase(c);
        literal.emplace_back(c, want);
        for (unsigned l = 1; l < s; ++l) want.insert(ix.at(l, PiTag::One));
        completed.emplace_back(c, std::move(want));
        run("(vi) deepest delta class", literal, completed,
            "literal omits power classes; completed adds them");
    }
    return reports;
}

} // namespace lzdg
