#include "celldga/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "celldga/error.hpp"
#include "celldga/freealg.hpp"
#include "square_view.hpp"

namespace celldga {

namespace {

int find_by_id(const auto& cells, const std::string& id) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].id == id) return static_cast<int>(i);
    return -1;
}

PosPair ordered(int p, int q) { return {std::min(p, q), std::max(p, q)}; }

// 1-based "label -> position, 0 if absent" into 0-based "label -> position, -1 if absent"
std::vector<int> zero_based(const std::vector<int>& one_based, int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = one_based[static_cast<std::size_t>(i + 1)] - 1;
    return out;
}

std::vector<int> identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

class Builder {
public:
    explicit Builder(const Decomposition& d) : d_(d) {
        for (const auto& e : d.edges) erec_.emplace(e.id, &e);
        add_base();
    }

    CellComplex take() { return std::move(c_); }

    void add_squares(const std::vector<Subdivision>& subs) {
        std::unordered_map<std::string, const Subdivision*> by_square;
        for (const auto& s : subs) by_square.emplace(s.square, &s);
        for (const auto& s : subs) {
            split(eix_.at(s.split_R));
            if (!s.split_L.empty()) split(eix_.at(s.split_L));
        }
        for (const auto& s : d_.squares) {
            detail::SquareView v = detail::make_view(s, erec_);
            auto it = by_square.find(s.id);
            if (it == by_square.end())
                add_plain(v);
            else
                add_subdivided(v, *it->second);
        }
    }

    void decorate() {
        for (auto& f : c_.faces) {
            if (f.formula != FaceFormula::Swallow13 || f.paths[1].size() != 2) continue;
            const FacePath& dS = f.paths[1][0];
            for (auto& g : c_.faces) {
                if (&g == &f || g.paths[1].empty() || g.paths[1][0].edge != dS.edge) continue;
                const SquareRec* gs = d_.find_square(g.square);
                if (!gs || gs->type.tag != 9) continue;
                const int k = f.sw;  // crossing pair k+1, k+2 (1-based) in S labels
                PosPair ep = ordered(dS.pos[static_cast<std::size_t>(k)], dS.pos[static_cast<std::size_t>(k + 1)]);
                const auto& gpos = g.paths[1][0].pos;
                auto label_of = [&](int p) {
                    auto at = std::find(gpos.begin(), gpos.end(), p);
                    return at == gpos.end() ? -1 : static_cast<int>(at - gpos.begin());
                };
                int a = label_of(ep.first), b = label_of(ep.second);
                if (a < 0 || b < 0) continue;
                EdgeCell& e = c_.edges[static_cast<std::size_t>(dS.edge)];
                e.conj = ep;
                e.killed[ep] = 0;
                f.formula = FaceFormula::DecoratedS13;
                g.formula = FaceFormula::DecoratedT;
                g.t_pair = ordered(a, b);
                break;
            }
        }
    }

private:
    void add_base() {
        std::unordered_map<std::string, int> count;
        for (const auto& e : d_.edges) {
            count[e.head] = e.type.n;
            count[e.tail] = e.type.tail_count();
        }
        for (const auto& v : d_.vertices) {
            vix_[v] = static_cast<int>(c_.vertices.size());
            c_.vertices.push_back({v, count.count(v) ? count[v] : 0, {}});
        }
        for (const auto& e : d_.edges) {
            EdgeCell ec;
            ec.id = e.id;
            ec.tail = vix_.at(e.tail);
            ec.head = vix_.at(e.head);
            ec.n = e.type.n;
            ec.head_pos = identity(ec.n);
            for (int t : e.type.tail_positions()) ec.tail_pos.push_back(t - 1);
            if (e.type.tag == EdgeTag::Cu) ec.tail_cusps.push_back({e.type.k - 1, e.type.k});
            eix_[e.id] = static_cast<int>(c_.edges.size());
            c_.edges.push_back(std::move(ec));
        }
    }

    struct Split {
        int vertex = -1, plus = -1, minus = -1;
        std::vector<int> minus_of;  // original head position -> position on the lower half
    };

    // Cut an edge at its crossing nearest the head.
    void split(int e) {
        if (splits_.count(e)) return;
        const EdgeRec& rec = *erec_.at(c_.edges[static_cast<std::size_t>(e)].id);
        int p = 0;
        if (rec.type.tag == EdgeTag::OneCr)
            p = rec.type.k - 1;
        else if (rec.type.tag == EdgeTag::TwoCr)
            p = rec.type.k;
        else
            throw Error(ErrorCode::NotSubdivided, "edge " + rec.id + " has no crossing to split at");
        EdgeCell orig = c_.edges[static_cast<std::size_t>(e)];
        const int n = orig.n;
        Split s;
        s.vertex = static_cast<int>(c_.vertices.size());
        c_.vertices.push_back({rec.id + ".x", n, {{PosPair{p, p + 1}, 0}}});

        EdgeCell plus;
        plus.id = rec.id + ".p";
        plus.tail = s.vertex;
        plus.head = orig.head;
        plus.n = n;
        plus.head_pos = plus.tail_pos = identity(n);

        EdgeCell minus;
        minus.id = rec.id + ".m";
        minus.tail = orig.tail;
        minus.head = s.vertex;
        minus.n = n;
        std::vector<int> lambda = identity(n);
        std::swap(lambda[static_cast<std::size_t>(p)], lambda[static_cast<std::size_t>(p + 1)]);
        for (int q = 0; q < n; ++q) {
            minus.head_pos.push_back(lambda[static_cast<std::size_t>(q)]);
            minus.tail_pos.push_back(orig.tail_pos[static_cast<std::size_t>(lambda[static_cast<std::size_t>(q)])]);
        }
        s.minus_of = lambda;  // an involution

        c_.edges[static_cast<std::size_t>(e)].removed = true;
        s.plus = static_cast<int>(c_.edges.size());
        c_.edges.push_back(std::move(plus));
        s.minus = static_cast<int>(c_.edges.size());
        c_.edges.push_back(std::move(minus));
        splits_[e] = std::move(s);
    }

    std::vector<FacePath> route(int e, const std::vector<int>& pos) const {
        auto it = splits_.find(e);
        if (it == splits_.end()) return {{e, pos}};
        std::vector<int> mpos;
        for (int p : pos) mpos.push_back(p < 0 ? -1 : it->second.minus_of[static_cast<std::size_t>(p)]);
        return {{it->second.minus, mpos}, {it->second.plus, pos}};
    }

    std::vector<int> upper_half(int e, const std::vector<int>& pos, std::vector<FacePath>& out) const {
        out.push_back({splits_.at(e).plus, pos});
        return pos;
    }

    FacePath lower_half(int e, const std::vector<int>& pos) const {
        const Split& s = splits_.at(e);
        std::vector<int> mpos;
        for (int p : pos) mpos.push_back(p < 0 ? -1 : s.minus_of[static_cast<std::size_t>(p)]);
        return {s.minus, mpos};
    }

    void kill_vertex(int v, int p, int q) {
        if (p < 0 || q < 0 || p == q) return;
        auto& killed = c_.vertices[static_cast<std::size_t>(v)].killed;
        killed.emplace(ordered(p, q), 0);
    }

    void kill_edge_cell(int e, int p, int q, int value) {
        EdgeCell& ec = c_.edges[static_cast<std::size_t>(e)];
        PosPair key = ordered(p, q);
        auto [it, fresh] = ec.killed.emplace(key, value);
        if (!fresh && it->second != value)
            throw Error(ErrorCode::InconsistentGluing, "edge " + ec.id + " receives conflicting constants");
        const std::size_t sp = static_cast<std::size_t>(p), sq = static_cast<std::size_t>(q);
        kill_vertex(ec.tail, ec.tail_pos[sp], ec.tail_pos[sq]);
        kill_vertex(ec.head, ec.head_pos[sp], ec.head_pos[sq]);
    }

    // p, q: positions on the original edge
    void kill_edge(int e, int p, int q, int value) {
        auto it = splits_.find(e);
        if (it == splits_.end()) {
            kill_edge_cell(e, p, q, value);
            return;
        }
        kill_edge_cell(it->second.plus, p, q, value);
        kill_edge_cell(it->second.minus, it->second.minus_of[static_cast<std::size_t>(p)],
                       it->second.minus_of[static_cast<std::size_t>(q)], value);
    }

    std::vector<int> side_pos(const detail::SquareView& v, Side s) const { return zero_based(v.pos_on(s), v.model.n); }

    FaceCell base_face(const detail::SquareView& v) const {
        FaceCell f;
        f.id = v.rec->id;
        f.square = v.rec->id;
        f.n = v.model.n;
        f.v0 = vix_.at(v.ll);
        f.v1 = vix_.at(v.ur);
        f.v0_pos = zero_based(v.pos_at(Corner::LL), f.n);
        f.v1_pos = identity(f.n);
        for (auto [i, j] : v.model.ll_cusps) f.v0_cusps.push_back({i - 1, j - 1});
        f.formula = v.model.formula;
        f.sw = v.model.sw;
        return f;
    }

    void append(std::vector<FacePath>& path, const detail::SquareView& v, Side s) const {
        auto r = route(eix_.at(v.edge_of(s)), side_pos(v, s));
        path.insert(path.end(), r.begin(), r.end());
    }

    void add_plain(const detail::SquareView& v) {
        FaceCell f = base_face(v);
        append(f.paths[0], v, Side::L);
        append(f.paths[0], v, Side::U);
        append(f.paths[1], v, Side::D);
        append(f.paths[1], v, Side::R);
        for (const auto& a : v.model.arcs) {
            if (a.kind != ArcKind::Crossing) continue;
            const auto i = static_cast<std::size_t>(a.i - 1), j = static_cast<std::size_t>(a.j - 1);
            if (a.place.on_corner) {
                kill_vertex(f.v0, f.v0_pos[i], f.v0_pos[j]);
            } else {
                auto pos = side_pos(v, a.place.side);
                kill_edge(eix_.at(v.edge_of(a.place.side)), pos[i], pos[j], a.edge_value);
            }
        }
        c_.faces.push_back(std::move(f));
    }

    void add_subdivided(const detail::SquareView& v, const Subdivision& sub) {
        const int n = v.model.n;
        const int k = v.rec->type.k;  // horizontal arcs involve labels k, k+1, k+2
        const int eR = eix_.at(v.edge_of(Side::R));
        const int xR = splits_.at(eR).vertex;
        const bool six = v.rec->type.tag == 6;
        const int eL = eix_.at(v.edge_of(Side::L));

        // lower-cell labels: lower label a sits where square label lambda[a] sits at the upper right
        std::vector<int> lambda = identity(n);
        std::swap(lambda[static_cast<std::size_t>(k)], lambda[static_cast<std::size_t>(k + 1)]);
        auto through = [&](const std::vector<int>& pos) {
            std::vector<int> out;
            for (int a = 0; a < n; ++a) out.push_back(pos[static_cast<std::size_t>(lambda[static_cast<std::size_t>(a)])]);
            return out;
        };

        const std::vector<int> ll = zero_based(v.pos_at(Corner::LL), n);
        const std::vector<int> lpos = side_pos(v, Side::L);

        EdgeCell C;
        C.id = sub.C;
        C.n = n;
        C.head = xR;
        C.head_pos = identity(n);
        if (six) {
            C.tail = splits_.at(eL).vertex;
            C.tail_pos = lpos;
        } else {
            C.tail = vix_.at(v.ll);
            C.tail_pos = ll;
            for (auto [i, j] : v.model.ll_cusps) C.tail_cusps.push_back({i - 1, j - 1});
        }
        const int eC = static_cast<int>(c_.edges.size());
        c_.edges.push_back(std::move(C));

        FaceCell up = base_face(v);
        up.id = sub.upper;
        if (six) {
            up.v0 = splits_.at(eL).vertex;
            up.v0_pos = lpos;
            up.v0_cusps.clear();
            up.paths[0].push_back({splits_.at(eL).plus, lpos});
        } else {
            append(up.paths[0], v, Side::L);
        }
        append(up.paths[0], v, Side::U);
        up.paths[1].push_back({eC, identity(n)});
        up.paths[1].push_back({splits_.at(eR).plus, identity(n)});

        FaceCell lo = base_face(v);
        lo.id = sub.lower;
        lo.v1 = xR;
        lo.v0_pos = through(ll);
        lo.v1_pos = lambda;
        lo.v0_cusps.clear();
        for (auto [i, j] : v.model.ll_cusps) {
            auto inv = [&](int label) {
                return static_cast<int>(std::find(lambda.begin(), lambda.end(), label - 1) - lambda.begin());
            };
            lo.v0_cusps.push_back(ordered(inv(i), inv(j)));
        }
        if (six) lo.paths[0].push_back(lower_half(eL, through(lpos)));
        lo.paths[0].push_back({eC, lambda});
        {
            auto dpath = route(eix_.at(v.edge_of(Side::D)), through(side_pos(v, Side::D)));
            lo.paths[1].insert(lo.paths[1].end(), dpath.begin(), dpath.end());
        }
        lo.paths[1].push_back(lower_half(eR, lambda));

        for (const auto& a : v.model.arcs) {
            if (a.kind != ArcKind::Crossing) continue;
            if (a.i == k + 1 && a.j == k + 2) {
                kill_edge_cell(eC, k, k + 1, 0);
                continue;
            }
            const auto i = static_cast<std::size_t>(a.i - 1), j = static_cast<std::size_t>(a.j - 1);
            if (a.place.on_corner) {
                kill_vertex(up.v0, ll[i], ll[j]);
            } else {
                auto pos = side_pos(v, a.place.side);
                kill_edge(eix_.at(v.edge_of(a.place.side)), pos[i], pos[j], a.edge_value);
            }
        }
        c_.faces.push_back(std::move(up));
        c_.faces.push_back(std::move(lo));
    }

    const Decomposition& d_;
    CellComplex c_;
    std::unordered_map<std::string, int> vix_, eix_;
    std::unordered_map<std::string, const EdgeRec*> erec_;
    std::map<int, Split> splits_;
};

}  // namespace

int CellComplex::vertex_index(const std::string& id) const { return find_by_id(vertices, id); }
int CellComplex::edge_index(const std::string& id) const { return find_by_id(edges, id); }
int CellComplex::face_index(const std::string& id) const { return find_by_id(faces, id); }

CellComplex transverse_complex(const Decomposition& d) {
    require_valid(d);
    Builder b(d);
    b.add_squares({});
    return b.take();
}

CellComplex parallel_complex(const ParallelDecomposition& p, bool decorated) {
    require_valid(p.base);
    Builder b(p.base);
    b.add_squares(p.subdivisions);
    if (decorated) b.decorate();
    return b.take();
}

// ---------------------------------------------------------------- sheets

namespace {

struct UnionFind {
    std::vector<int> parent;
    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

SheetAtlas global_sheets(const CellComplex& c) {
    UnionFind uf;
    std::vector<std::vector<int>> vnode(c.vertices.size()), enode(c.edges.size()), fnode(c.faces.size());
    std::vector<std::string> names;
    for (std::size_t v = 0; v < c.vertices.size(); ++v)
        for (int p = 0; p < c.vertices[v].n; ++p) {
            vnode[v].push_back(uf.make());
            names.push_back(c.vertices[v].id + "#" + std::to_string(p + 1));
        }
    auto vertex_node = [&](int v, int p, const std::string& who) {
        const auto& nodes = vnode[static_cast<std::size_t>(v)];
        if (p < 0 || static_cast<std::size_t>(p) >= nodes.size())
            throw Error(ErrorCode::InconsistentGluing, who + " refers to sheet " + std::to_string(p + 1) +
                                                           " above vertex " + c.vertices[static_cast<std::size_t>(v)].id);
        return nodes[static_cast<std::size_t>(p)];
    };
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        const EdgeCell& ec = c.edges[e];
        if (ec.removed) continue;
        for (int p = 0; p < ec.n; ++p) {
            int node = uf.make();
            names.push_back(ec.id + "#" + std::to_string(p + 1));
            enode[e].push_back(node);
            uf.unite(node, vertex_node(ec.head, ec.head_pos[static_cast<std::size_t>(p)], "edge " + ec.id));
            if (int t = ec.tail_pos[static_cast<std::size_t>(p)]; t >= 0) uf.unite(node, vertex_node(ec.tail, t, "edge " + ec.id));
        }
    }
    for (std::size_t f = 0; f < c.faces.size(); ++f) {
        const FaceCell& fc = c.faces[f];
        for (int i = 0; i < fc.n; ++i) {
            int node = uf.make();
            names.push_back(fc.id + "#" + std::to_string(i + 1));
            fnode[f].push_back(node);
            const auto si = static_cast<std::size_t>(i);
            if (fc.v0_pos[si] >= 0) uf.unite(node, vertex_node(fc.v0, fc.v0_pos[si], "face " + fc.id));
            if (fc.v1_pos[si] >= 0) uf.unite(node, vertex_node(fc.v1, fc.v1_pos[si], "face " + fc.id));
            for (const auto& path : fc.paths)
                for (const auto& fp : path) {
                    int p = fp.pos[si];
                    if (p < 0) continue;
                    const auto& en = enode[static_cast<std::size_t>(fp.edge)];
                    if (static_cast<std::size_t>(p) >= en.size())
                        throw Error(ErrorCode::InconsistentGluing, "face " + fc.id + " refers to a missing sheet");
                    uf.unite(node, en[static_cast<std::size_t>(p)]);
                }
        }
    }

    SheetAtlas a;
    std::unordered_map<int, int> region_of_root;
    auto region = [&](int node) {
        int root = uf.find(node);
        auto [it, fresh] = region_of_root.emplace(root, a.regions);
        if (fresh) {
            a.region_name.push_back(names[static_cast<std::size_t>(root)]);
            ++a.regions;
        }
        return it->second;
    };
    auto fill = [&](const std::vector<std::vector<int>>& nodes, std::vector<std::vector<int>>& out) {
        out.resize(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (int node : nodes[i]) out[i].push_back(region(node));
    };
    fill(vnode, a.vertex_region);
    fill(enode, a.edge_region);
    fill(fnode, a.face_region);

    std::set<std::pair<int, int>> cusps;
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        if (c.edges[e].removed) continue;
        for (auto [u, l] : c.edges[e].tail_cusps)
            cusps.insert({a.edge_region[e][static_cast<std::size_t>(u)], a.edge_region[e][static_cast<std::size_t>(l)]});
    }
    for (std::size_t f = 0; f < c.faces.size(); ++f)
        for (auto [u, l] : c.faces[f].v0_cusps)
            cusps.insert({a.face_region[f][static_cast<std::size_t>(u)], a.face_region[f][static_cast<std::size_t>(l)]});
    a.cusp_constraints.assign(cusps.begin(), cusps.end());
    return a;
}

SheetAtlas global_sheets(const Decomposition& d) { return global_sheets(transverse_complex(d)); }

MaslovData maslov(const SheetAtlas& atlas, const std::vector<long long>& base_mu) {
    const auto R = static_cast<std::size_t>(atlas.regions);
    // adjacency: (neighbor, w) meaning mu(self) - mu(neighbor) = w
    std::vector<std::vector<std::pair<int, long long>>> adj(R);
    for (auto [u, l] : atlas.cusp_constraints) {
        adj[static_cast<std::size_t>(u)].push_back({l, 1});
        adj[static_cast<std::size_t>(l)].push_back({u, -1});
    }
    MaslovData md;
    md.mu.assign(R, 0);
    md.component.assign(R, -1);
    long long g = 0;
    for (std::size_t s = 0; s < R; ++s) {
        if (md.component[s] >= 0) continue;
        const int comp = static_cast<int>(md.base_region.size());
        md.base_region.push_back(static_cast<int>(s));
        long long base = 0;
        if (base_mu.size() == 1)
            base = base_mu[0];
        else if (static_cast<std::size_t>(comp) < base_mu.size())
            base = base_mu[static_cast<std::size_t>(comp)];
        md.mu[s] = base;
        md.component[s] = comp;
        std::queue<std::size_t> q;
        q.push(s);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (auto [v, w] : adj[u]) {
                const auto sv = static_cast<std::size_t>(v);
                if (md.component[sv] < 0) {
                    md.component[sv] = comp;
                    md.mu[sv] = md.mu[u] - w;
                    q.push(sv);
                } else {
                    long long defect = md.mu[u] - md.mu[sv] - w;
                    g = std::gcd(g, defect < 0 ? -defect : defect);
                }
            }
        }
    }
    md.m = g;
    if (g > 0)
        for (auto& x : md.mu) x = reduce_degree(x, g);
    return md;
}

MaslovData with_modulus(const MaslovData& md, long long m) {
    if (m < 0 || (md.m > 0 && (m == 0 || md.m % m != 0)))
        throw Error(ErrorCode::InvalidModulus,
                    "grading modulus " + std::to_string(m) + " is incompatible with Maslov number " + std::to_string(md.m));
    MaslovData out = md;
    out.m = m;
    if (m > 0)
        for (auto& x : out.mu) x = reduce_degree(x, m);
    return out;
}

}  // namespace celldga
