#include <algorithm>
#include <numeric>
#include <sstream>

#include "celldga/cellcomplex.hpp"
#include "celldga/error.hpp"

namespace celldga {

std::vector<int> EdgeType::tail_positions() const {
    std::vector<int> t(static_cast<std::size_t>(n));
    std::iota(t.begin(), t.end(), 1);
    auto at = [&](int p) -> int& { return t[static_cast<std::size_t>(p - 1)]; };
    switch (tag) {
        case EdgeTag::PV: break;
        case EdgeTag::OneCr: std::swap(at(k), at(k + 1)); break;
        case EdgeTag::TwoCr:
            // above the initial vertex the order is S_{k+2}, S_k, S_{k+1}
            at(k) = k + 1;
            at(k + 1) = k + 2;
            at(k + 2) = k;
            break;
        case EdgeTag::Cu:
            for (int p = 1; p <= n; ++p) at(p) = p < k ? p : (p <= k + 1 ? 0 : p - 2);
            break;
    }
    return t;
}

std::vector<std::pair<int, int>> EdgeType::crossings() const {
    switch (tag) {
        case EdgeTag::OneCr: return {{k, k + 1}};
        case EdgeTag::TwoCr: return {{k + 1, k + 2}, {k, k + 2}};
        default: return {};
    }
}

bool EdgeType::well_formed() const {
    if (n < 0) return false;
    switch (tag) {
        case EdgeTag::PV: return true;
        case EdgeTag::OneCr:
        case EdgeTag::Cu: return k >= 1 && k + 1 <= n;
        case EdgeTag::TwoCr: return k >= 1 && k + 2 <= n;
    }
    return false;
}

std::string EdgeType::to_string() const {
    static const char* names[] = {"PV", "OneCr", "TwoCr", "Cu"};
    std::ostringstream os;
    os << names[static_cast<int>(tag)];
    if (tag != EdgeTag::PV) os << '(' << k << ')';
    os << "/n=" << n;
    return os.str();
}

const char* side_name(Side s) {
    static const char* names[] = {"L", "D", "R", "U"};
    return names[static_cast<int>(s)];
}

Side reflect(Side s) {
    switch (s) {
        case Side::L: return Side::D;
        case Side::D: return Side::L;
        case Side::R: return Side::U;
        case Side::U: return Side::R;
    }
    return s;
}

Corner reflect(Corner c) {
    switch (c) {
        case Corner::UL: return Corner::LR;
        case Corner::LR: return Corner::UL;
        default: return c;
    }
}

std::string SquareType::to_string() const {
    std::ostringstream os;
    os << "type " << tag << " n=" << n;
    if (k) os << " k=" << k;
    if (l) os << " l=" << l;
    if (reflected) os << " reflected";
    return os.str();
}

namespace {

using Labels = std::vector<int>;

Labels iota_labels(int n) {
    Labels v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

Labels without(Labels v, std::initializer_list<int> drop) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](int x) { return std::find(drop.begin(), drop.end(), x) != drop.end(); }),
            v.end());
    return v;
}

Labels swapped(Labels v, int p, int q) {
    std::swap(v[static_cast<std::size_t>(p - 1)], v[static_cast<std::size_t>(q - 1)]);
    return v;
}

[[noreturn]] void malformed(const SquareType& t, const std::string& why) {
    throw Error(ErrorCode::MalformedSquare, "malformed square (" + t.to_string() + "): " + why);
}

ModelArc crossing(int i, int j, Side s, int value = 0) {
    return {ArcKind::Crossing, std::min(i, j), std::max(i, j), {false, s}, value};
}
ModelArc crossing_at_corner(int i, int j) {
    return {ArcKind::Crossing, std::min(i, j), std::max(i, j), {true, Side::L}, 0};
}
ModelArc cusp(int i, int j, Side s) { return {ArcKind::Cusp, std::min(i, j), std::max(i, j), {false, s}, 0}; }
ModelArc cusp_at_corner(int i, int j) { return {ArcKind::Cusp, std::min(i, j), std::max(i, j), {true, Side::L}, 0}; }

EdgeType pv(int n) { return {EdgeTag::PV, n, 0}; }
EdgeType cr1(int n, int k) { return {EdgeTag::OneCr, n, k}; }
EdgeType cr2(int n, int k) { return {EdgeTag::TwoCr, n, k}; }
EdgeType cu(int n, int k) { return {EdgeTag::Cu, n, k}; }

bool disjoint_pairs(int k, int l) { return k != l && k + 1 != l && l + 1 != k; }

}  // namespace

SquareModel square_model(const SquareType& t) {
    const int n = t.n, k = t.k, l = t.l;
    if (t.tag < 1 || t.tag > 14) malformed(t, "type must be 1..14");
    if (n < 1) malformed(t, "n must be positive");
    auto need = [&](bool ok, const char* why) {
        if (!ok) malformed(t, why);
    };

    SquareModel m;
    m.n = n;
    const Labels id = iota_labels(n);
    auto& UR = m.corner[static_cast<int>(Corner::UR)];
    auto& UL = m.corner[static_cast<int>(Corner::UL)];
    auto& LL = m.corner[static_cast<int>(Corner::LL)];
    auto& LR = m.corner[static_cast<int>(Corner::LR)];
    auto& sL = m.side_type[static_cast<int>(Side::L)];
    auto& sD = m.side_type[static_cast<int>(Side::D)];
    auto& sR = m.side_type[static_cast<int>(Side::R)];
    auto& sU = m.side_type[static_cast<int>(Side::U)];
    UR = id;

    switch (t.tag) {
        case 1:
            UL = LL = LR = id;
            sL = sD = sR = sU = pv(n);
            break;
        case 2:  // vertical crossing k,k+1
            need(k >= 1 && k + 1 <= n, "need 1 <= k, k+1 <= n");
            UL = LL = swapped(id, k, k + 1);
            LR = id;
            sU = sD = cr1(n, k);
            sL = sR = pv(n);
            m.arcs = {crossing(k, k + 1, Side::L)};
            break;
        case 3:  // crossing cutting the lower-left corner
            need(k >= 1 && k + 1 <= n, "need 1 <= k, k+1 <= n");
            UL = LR = id;
            LL = swapped(id, k, k + 1);
            sL = sD = cr1(n, k);
            sU = sR = pv(n);
            m.arcs = {crossing_at_corner(k, k + 1)};
            break;
        case 4:  // crossing cutting the lower-right corner
            need(k >= 1 && k + 1 <= n, "need 1 <= k, k+1 <= n");
            UL = LL = id;
            LR = swapped(id, k, k + 1);
            sR = sD = cr1(n, k);
            sU = sL = pv(n);
            m.arcs = {crossing(k, k + 1, Side::D)};
            break;
        case 5: {  // S_{k+2} crosses S_{k+1} then S_k, horizontally
            need(k >= 1 && k + 2 <= n, "need 1 <= k, k+2 <= n");
            UL = id;
            LL = LR = id;
            LR[static_cast<std::size_t>(k - 1)] = k + 2;
            LR[static_cast<std::size_t>(k)] = k;
            LR[static_cast<std::size_t>(k + 1)] = k + 1;
            LL = LR;
            sL = sR = cr2(n, k);
            sU = sD = pv(n);
            m.arcs = {crossing(k + 1, k + 2, Side::D), crossing(k, k + 2, Side::D)};
            break;
        }
        case 6: {  // arc (k+1,k+2) from L to R, arc (k,k+2) from R to D
            need(k >= 1 && k + 2 <= n, "need 1 <= k, k+2 <= n");
            UL = id;
            LL = swapped(id, k + 1, k + 2);
            LR = id;
            LR[static_cast<std::size_t>(k - 1)] = k + 2;
            LR[static_cast<std::size_t>(k)] = k;
            LR[static_cast<std::size_t>(k + 1)] = k + 1;
            sR = cr2(n, k);
            sL = cr1(n, k + 1);
            sD = cr1(n, k);
            sU = pv(n);
            m.arcs = {crossing(k + 1, k + 2, Side::D), crossing(k, k + 2, Side::D)};
            break;
        }
        case 7:  // vertical crossing k,k+1 and horizontal crossing l,l+1
            need(k >= 1 && k + 1 <= n && l >= 1 && l + 1 <= n && disjoint_pairs(k, l),
                 "need disjoint pairs (k,k+1), (l,l+1) within 1..n");
            UL = swapped(id, k, k + 1);
            LR = swapped(id, l, l + 1);
            LL = swapped(UL, l, l + 1);
            sU = sD = cr1(n, k);
            sR = sL = cr1(n, l);
            m.arcs = {crossing(k, k + 1, Side::L), crossing(l, l + 1, Side::D)};
            break;
        case 8: {  // triple point
            need(k >= 1 && k + 2 <= n, "need 1 <= k, k+2 <= n");
            UL = swapped(id, k, k + 1);
            LL = id;
            LL[static_cast<std::size_t>(k - 1)] = k + 2;
            LL[static_cast<std::size_t>(k)] = k + 1;
            LL[static_cast<std::size_t>(k + 1)] = k;
            LR = id;
            LR[static_cast<std::size_t>(k - 1)] = k + 2;
            LR[static_cast<std::size_t>(k)] = k;
            LR[static_cast<std::size_t>(k + 1)] = k + 1;
            sU = cr1(n, k);
            sR = cr2(n, k);
            sL = cr2(n, k);
            sD = cr1(n, k + 1);
            m.arcs = {crossing(k, k + 1, Side::L), crossing(k + 1, k + 2, Side::D), crossing(k, k + 2, Side::D)};
            break;
        }
        case 9:  // vertical cusp, sheets k,k+1 exist to the right
            need(k >= 1 && k + 1 <= n, "need 1 <= k, k+1 <= n");
            UL = LL = without(id, {k, k + 1});
            LR = id;
            sU = sD = cu(n, k);
            sL = pv(n - 2);
            sR = pv(n);
            m.arcs = {cusp(k, k + 1, Side::L)};
            m.ll_cusps = {{k, k + 1}};
            break;
        case 10:  // vertical cusp k,k+1 and horizontal crossing l,l+1
            need(k >= 1 && k + 1 <= n && l >= 1 && l + 1 <= n && disjoint_pairs(k, l),
                 "need disjoint pairs (k,k+1), (l,l+1) within 1..n");
            UL = without(id, {k, k + 1});
            LR = swapped(id, l, l + 1);
            LL = without(LR, {k, k + 1});
            sU = sD = cu(n, k);
            sR = cr1(n, l);
            sL = cr1(n - 2, l < k ? l : l - 2);
            m.arcs = {cusp(k, k + 1, Side::L), crossing(l, l + 1, Side::D)};
            m.ll_cusps = {{k, k + 1}};
            break;
        case 11:  // vertical cusp k,k+1 and horizontal cusp l,l+1 (sheets above it)
            need(k >= 1 && k + 1 <= n && l >= 1 && l + 1 <= n && disjoint_pairs(k, l),
                 "need disjoint pairs (k,k+1), (l,l+1) within 1..n");
            UL = without(id, {k, k + 1});
            LR = without(id, {l, l + 1});
            LL = without(id, {k, k + 1, l, l + 1});
            sU = cu(n, k);
            sR = cu(n, l);
            sL = cu(n - 2, l < k ? l : l - 2);
            sD = cu(n - 2, k < l ? k : k - 2);
            m.arcs = {cusp(k, k + 1, Side::L), cusp(l, l + 1, Side::D)};
            m.ll_cusps = {{k, k + 1}, {l, l + 1}};
            break;
        case 12: {  // S_{k+2} passes through the cusp edge of S_k, S_{k+1}
            need(k >= 1 && k + 2 <= n, "need 1 <= k, k+2 <= n");
            UL = LL = without(id, {k, k + 1});
            LR = id;
            LR[static_cast<std::size_t>(k - 1)] = k + 2;
            LR[static_cast<std::size_t>(k)] = k;
            LR[static_cast<std::size_t>(k + 1)] = k + 1;
            sU = cu(n, k);
            sR = cr2(n, k);
            sD = cu(n, k + 1);
            sL = pv(n - 2);
            m.arcs = {cusp(k, k + 1, Side::L), crossing(k + 1, k + 2, Side::D), crossing(k, k + 2, Side::D)};
            m.ll_cusps = {{k, k + 1}};
            m.has_codim2 = true;
            break;
        }
        case 13: {  // upward swallowtail on k, k+1, k+2
            need(k >= 1 && k + 2 <= n, "need 1 <= k, k+2 <= n");
            UL = without(id, {k, k + 1});  // S~ carries label k+2 here
            LL = without(id, {k, k + 2});  // and label k+1 here
            LR = swapped(id, k + 1, k + 2);
            sU = cu(n, k);
            sD = cu(n, k);
            sR = cr1(n, k + 1);
            sL = pv(n - 2);
            m.arcs = {crossing(k + 1, k + 2, Side::D, 1), cusp(k, k + 1, Side::L), cusp_at_corner(k, k + 2)};
            m.ll_cusps = {{k, k + 2}};
            m.formula = FaceFormula::Swallow13;
            m.sw = k;
            m.has_codim2 = true;
            break;
        }
        case 14: {  // downward swallowtail on l-2, l-1, l
            need(l >= 3 && l <= n, "need 3 <= l <= n");
            UL = without(id, {l - 1, l});  // S~ carries label l-2 here
            LL = without(id, {l - 2, l});  // and label l-1 here
            LR = swapped(id, l - 2, l - 1);
            sU = cu(n, l - 1);
            sD = cu(n, l - 1);
            sR = cr1(n, l - 2);
            sL = pv(n - 2);
            m.arcs = {crossing(l - 2, l - 1, Side::D, 1), cusp(l - 1, l, Side::L), cusp_at_corner(l - 2, l)};
            m.ll_cusps = {{l - 2, l}};
            m.formula = FaceFormula::Swallow14;
            m.sw = l;
            m.has_codim2 = true;
            break;
        }
    }
    return m;
}

namespace {

std::vector<int> doubled_positions(const EdgeType& e) {
    std::vector<int> t = e.tail_positions();
    for (int& p : t) p = p ? 2 * p : 2 * e.k - 1;
    return t;
}

}  // namespace

SigmaMaps sigma_maps(const SquareType& t) {
    SquareModel m = square_model(t);
    // U and R both end at the upper-right corner, so their initial vertices
    // give the sheet positions at the other two corners.
    std::vector<int> canon_L = doubled_positions(m.side_type[static_cast<int>(Side::U)]);
    std::vector<int> canon_D = doubled_positions(m.side_type[static_cast<int>(Side::R)]);
    SigmaMaps s;
    if (t.reflected) {
        s.sigma_L = canon_D;
        s.sigma_D = canon_L;
    } else {
        s.sigma_L = canon_L;
        s.sigma_D = canon_D;
    }
    for (int i = 0; i < 4; ++i) {
        Side actual = static_cast<Side>(i);
        Side canon = t.reflected ? reflect(actual) : actual;
        s.side_type[static_cast<std::size_t>(i)] = m.side_type[static_cast<std::size_t>(canon)];
    }
    return s;
}

}  // namespace celldga
