#include "celldga/transform.hpp"

#include <algorithm>
#include <set>

#include "celldga/error.hpp"

namespace celldga {

Polynomial DgaMorphism::image(Sym s) const {
    auto it = images.find(s);
    return it == images.end() ? Polynomial::gen(s) : it->second;
}

Polynomial DgaMorphism::apply(const Polynomial& p) const { return substitute_partial(images, p); }

DgaMorphism identity_morphism(std::shared_ptr<const Dga> d) { return {d, d, {}}; }

DgaMorphism compose(const DgaMorphism& f, const DgaMorphism& h) {
    DgaMorphism out{f.source, h.target, {}};
    for (const auto& g : f.source->gens) {
        Polynomial p = h.apply(f.image(g.sym));
        if (!(p == Polynomial::gen(g.sym))) out.images[g.sym] = std::move(p);
    }
    return out;
}

Dga stabilize(const Dga& dga, long long deg) {
    int n = 0;
    while (dga.find("aux" + std::to_string(n) + ".x") || dga.find("aux" + std::to_string(n) + ".y")) ++n;
    const std::string cell = "aux" + std::to_string(n);
    Dga out = dga;
    Generator x{cell + ".x", cell, "aux", 0, 0, reduce_degree(deg, dga.m), intern(cell + ".x")};
    Generator y{cell + ".y", cell, "aux", 0, 1, reduce_degree(deg - 1, dga.m), intern(cell + ".y")};
    Sym ys = y.sym;
    out.add(std::move(x), Polynomial::gen(ys));
    out.add(std::move(y), Polynomial{});
    out.finalize();
    return out;
}

namespace {

[[noreturn]] void bad_pair(const CancelPair& p, const std::string& why) {
    throw Error(ErrorCode::BadPair, "cannot cancel (" + p.x + ", " + p.y + "): " + why);
}

}  // namespace

Cancelled cancel_with_map(const Dga& dga, const CancelPair& pair) {
    const Generator* gx = dga.find(pair.x);
    const Generator* gy = dga.find(pair.y);
    if (!gx) bad_pair(pair, "unknown generator " + pair.x);
    if (!gy) bad_pair(pair, "unknown generator " + pair.y);
    if (gx->sym == gy->sym) bad_pair(pair, "x and y coincide");
    const Polynomial& dx = dga.diff.at(gx->sym);
    const Word yw{gy->sym};
    if (!dx.contains_word(yw)) bad_pair(pair, "d(" + pair.x + ") has no term " + pair.y);
    Polynomial v = dx + Polynomial::gen(gy->sym);
    if (v.mentions(gx->sym) || v.mentions(gy->sym)) bad_pair(pair, "remainder mentions x or y");
    if (reduce_degree(gx->degree - 1 - gy->degree, dga.m) != 0) bad_pair(pair, "degrees do not differ by one");

    auto source = std::make_shared<const Dga>(dga);
    SymMap<Polynomial> h;
    h[gx->sym] = Polynomial{};
    h[gy->sym] = v;
    Dga out;
    out.m = dga.m;
    for (const auto& g : dga.gens) {
        if (g.sym == gx->sym || g.sym == gy->sym) continue;
        out.add(g, substitute_partial(h, dga.diff.at(g.sym)));
    }
    out.finalize();
    Cancelled c{std::move(out), {}};
    c.quotient = {source, nullptr, std::move(h)};
    c.quotient.target = std::make_shared<const Dga>(c.dga);
    return c;
}

Dga cancel(const Dga& dga, const CancelPair& pair) { return cancel_with_map(dga, pair).dga; }

std::vector<CancelPair> valid_pairs(const Dga& dga) {
    std::vector<CancelPair> out;
    for (const auto& g : dga.gens) {
        const Polynomial& d = dga.diff.at(g.sym);
        for (const Word& w : d.terms()) {
            if (w.size() != 1 || w[0] == g.sym) continue;
            const Generator* y = dga.find(w[0]);
            Polynomial v = d + Polynomial::gen(w[0]);
            if (v.mentions(g.sym) || v.mentions(w[0])) continue;
            if (reduce_degree(g.degree - 1 - y->degree, dga.m) != 0) continue;
            out.push_back({g.id, y->id});
        }
    }
    return out;
}

Cancelled cancel_pipeline(const Dga& dga, const std::vector<CancelPair>& pairs) {
    auto start = std::make_shared<const Dga>(dga);
    Cancelled acc{dga, identity_morphism(start)};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        Cancelled step;
        try {
            step = cancel_with_map(acc.dga, pairs[i]);
        } catch (const Error& e) {
            throw Error(ErrorCode::BadPairAt, "pair " + std::to_string(i) + ": " + e.what(), static_cast<int>(i));
        }
        acc.quotient = compose(acc.quotient, step.quotient);
        acc.dga = std::move(step.dga);
    }
    acc.quotient.target = std::make_shared<const Dga>(acc.dga);
    return acc;
}

std::vector<CancelPair> pipeline_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorCode::Parse, "pipeline must be a JSON array");
    std::vector<CancelPair> out;
    for (const auto& e : j) {
        if (!e.is_object() || e.size() != 2 || !e.contains("x") || !e.contains("y") || !e["x"].is_string() ||
            !e["y"].is_string())
            throw Error(ErrorCode::Parse, "pipeline entries must be {\"x\": id, \"y\": id}");
        out.push_back({e["x"].get<std::string>(), e["y"].get<std::string>()});
    }
    return out;
}

nlohmann::json to_json(const std::vector<CancelPair>& pairs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : pairs) out.push_back({{"x", p.x}, {"y", p.y}});
    return out;
}

std::pair<Dga, DgaMorphism> elementary_iso(const Dga& dga, const std::string& g, const Polynomial& v) {
    const Generator* gen = dga.find(g);
    if (!gen) throw Error(ErrorCode::UnknownGenerator, "unknown generator " + g);
    if (v.mentions(gen->sym)) throw Error(ErrorCode::SelfReference, "image of " + g + " may not mention " + g);
    Grading gr = dga.grading();
    for (const Word& w : v.terms()) {
        for (Sym s : w)
            if (!dga.find(s)) throw Error(ErrorCode::UnknownGenerator, "unknown generator " + name_of(s));
        if (word_degree(w, gr) != gen->degree)
            throw Error(ErrorCode::DegreeMismatch, "term of degree " + std::to_string(word_degree(w, gr)) +
                                                       " in the image of " + g + " (degree " +
                                                       std::to_string(gen->degree) + ")");
    }
    SymMap<Polynomial> phi;
    phi[gen->sym] = Polynomial::gen(gen->sym) + v;
    Dga out;
    out.m = dga.m;
    for (const auto& x : dga.gens) {
        // phi is an involution, so the new differential is phi . d . phi
        Polynomial d = derive(dga.diff, substitute_partial(phi, Polynomial::gen(x.sym)));
        out.add(x, substitute_partial(phi, d));
    }
    out.finalize();
    DgaMorphism m{std::make_shared<const Dga>(dga), std::make_shared<const Dga>(out), phi};
    return {std::move(out), std::move(m)};
}

std::vector<Failure> verify_chain_map(const DgaMorphism& phi) {
    std::vector<Failure> out;
    for (const auto& g : phi.source->gens) {
        Polynomial lhs = phi.apply(phi.source->diff.at(g.sym));
        Polynomial rhs;
        try {
            rhs = derive(phi.target->diff, phi.image(g.sym));
        } catch (const Error& e) {
            out.push_back({g.id, {}, e.what()});
            continue;
        }
        if (!(lhs == rhs)) out.push_back({g.id, lhs + rhs, "phi(d g) differs from d(phi g)"});
    }
    return out;
}

namespace {

struct Ordered {
    int dist = 0;
    int i = 0, j = 0;
    CancelPair pair;
};

PosPair ordered_pair(int p, int q) { return {std::min(p, q), std::max(p, q)}; }

void require_single_split(const CellComplex& par, const Subdivision& s) {
    if (!s.split_L.empty())
        throw Error(ErrorCode::NotSubdivided, "square " + s.square + " is split along both sides; no pipeline is defined");
    if (par.edge_index(s.R_minus) < 0 || par.vertex_index(s.vertex_R) < 0 || par.face_index(s.lower) < 0 ||
        par.edge_index(s.C) < 0)
        throw Error(ErrorCode::NotSubdivided, "square " + s.square + " is not subdivided in this complex");
}

std::vector<CancelPair> flatten(std::vector<Ordered> first, std::vector<Ordered> rest, bool decreasing) {
    std::sort(rest.begin(), rest.end(), [&](const Ordered& a, const Ordered& b) {
        if (a.dist != b.dist) return decreasing ? a.dist > b.dist : a.dist < b.dist;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    std::vector<CancelPair> out;
    for (auto& o : first) out.push_back(o.pair);
    for (auto& o : rest) out.push_back(o.pair);
    return out;
}

}  // namespace

std::vector<CancelPair> cancellation1_pairs(const CellComplex& par, const Subdivision& s) {
    require_single_split(par, s);
    const EdgeCell& m = par.edges[static_cast<std::size_t>(par.edge_index(s.R_minus))];
    const VertexCell& x = par.vertices[static_cast<std::size_t>(par.vertex_index(s.vertex_R))];
    const VertexCell& tail = par.vertices[static_cast<std::size_t>(m.tail)];
    std::vector<Ordered> first, rest;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            if (m.killed.count({i, j})) continue;
            Ordered o{j - i, i, j, {generator_id('b', m.id, i, j), ""}};
            PosPair h = ordered_pair(m.head_pos[static_cast<std::size_t>(i)], m.head_pos[static_cast<std::size_t>(j)]);
            if (x.killed.count(h)) {
                PosPair t = ordered_pair(m.tail_pos[static_cast<std::size_t>(i)], m.tail_pos[static_cast<std::size_t>(j)]);
                o.pair.y = generator_id('a', tail.id, t.first, t.second);
                first.push_back(o);
            } else {
                o.pair.y = generator_id('a', x.id, h.first, h.second);
                rest.push_back(o);
            }
        }
    return flatten(first, rest, true);
}

std::vector<CancelPair> cancellation2_pairs(const CellComplex& par, const Subdivision& s) {
    require_single_split(par, s);
    const FaceCell& lo = par.faces[static_cast<std::size_t>(par.face_index(s.lower))];
    const int c = par.edge_index(s.C);
    const FacePath* cp = nullptr;
    for (const auto& fp : lo.paths[0])
        if (fp.edge == c) cp = &fp;
    const FacePath& dp = lo.paths[1].at(0);
    if (!cp) throw Error(ErrorCode::NotSubdivided, "lower cell of " + s.square + " does not border the diagonal");
    const EdgeCell& C = par.edges[static_cast<std::size_t>(c)];
    const EdgeCell& D = par.edges[static_cast<std::size_t>(dp.edge)];
    std::vector<Ordered> first, rest;
    for (int i = 0; i < lo.n; ++i)
        for (int j = i + 1; j < lo.n; ++j) {
            Ordered o{j - i, i, j, {generator_id('c', lo.id, i, j), ""}};
            PosPair h = ordered_pair(cp->pos[static_cast<std::size_t>(i)], cp->pos[static_cast<std::size_t>(j)]);
            if (C.killed.count(h)) {
                PosPair d = ordered_pair(dp.pos[static_cast<std::size_t>(i)], dp.pos[static_cast<std::size_t>(j)]);
                o.pair.y = generator_id('b', D.id, d.first, d.second);
                first.push_back(o);
            } else {
                o.pair.y = generator_id('b', C.id, h.first, h.second);
                rest.push_back(o);
            }
        }
    return flatten(first, rest, false);
}

DgaMorphism swallowtail_phi(const Decomposition& d, bool corrupted, const BuildOptions& opts) {
    ParallelDecomposition p = to_parallel(d);
    CellComplex target_cells = parallel_complex(p, true);
    auto source = std::make_shared<const Dga>(build_dga(d, opts));
    auto target = std::make_shared<const Dga>(build_from_complex(target_cells, opts));
    DgaMorphism phi{source, target, {}};
    bool any = false;
    for (const auto& e : target_cells.edges) {
        if (!e.conj) continue;
        any = true;
        if (corrupted) continue;
        auto [pp, q] = *e.conj;
        // B (I + E_{p,q}): column q picks up column p
        for (int i = 0; i < pp; ++i) {
            if (e.killed.count({i, q})) continue;
            Sym b = intern(generator_id('b', e.id, i, q));
            Polynomial add;
            if (auto it = e.killed.find({i, pp}); it != e.killed.end())
                add = it->second ? Polynomial::one() : Polynomial{};
            else
                add = Polynomial::gen(generator_id('b', e.id, i, pp));
            phi.images[b] = Polynomial::gen(b) + add;
        }
    }
    if (!any) throw Error(ErrorCode::MissingDecoration, "no swallowtail square shares its lower edge with a Type 9 square");
    return phi;
}

nlohmann::json to_json(const DgaMorphism& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& g : m.source->gens) out[g.id] = m.image(g.sym).to_string();
    return out;
}

}  // namespace celldga
