#include <algorithm>
#include <set>
#include <tuple>

#include "celldga/dga.hpp"
#include "celldga/error.hpp"

namespace celldga {

void Dga::add(Generator g, Polynomial d) {
    if (index_.count(g.sym)) throw Error(ErrorCode::InconsistentGluing, "duplicate generator " + g.id);
    index_.emplace(g.sym, gens.size());
    diff[g.sym] = std::move(d);
    gens.push_back(std::move(g));
}

void Dga::finalize() {
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& x, const Generator& y) {
        return std::tie(x.cell, x.kind, x.i, x.j, x.id) < std::tie(y.cell, y.kind, y.i, y.j, y.id);
    });
    index_.clear();
    for (std::size_t i = 0; i < gens.size(); ++i) index_.emplace(gens[i].sym, i);
}

const Generator* Dga::find(Sym s) const {
    auto it = index_.find(s);
    return it == index_.end() ? nullptr : &gens[it->second];
}

const Generator* Dga::find(std::string_view id) const { return find(intern(id)); }

Grading Dga::grading() const {
    Grading g;
    g.m = m;
    for (const auto& x : gens) g.deg[x.sym] = x.degree;
    return g;
}

std::string generator_id(char kind, const std::string& cell, int p, int q) {
    return std::string(1, kind) + ":" + cell + ":" + std::to_string(p + 1) + "," + std::to_string(q + 1);
}

namespace {

const auto gen_id = generator_id;

class Assembler {
public:
    Assembler(const CellComplex& c, const BuildOptions& opts) : c_(c) {
        SheetAtlas atlas = global_sheets(c);
        MaslovData md = maslov(atlas, opts.base_mu);
        if (opts.m_override) md = with_modulus(md, *opts.m_override);
        atlas_ = std::move(atlas);
        md_ = std::move(md);
        dga_.m = md_.m;
    }

    Dga run() {
        enumerate();
        for (std::size_t v = 0; v < c_.vertices.size(); ++v) vertex(v);
        for (std::size_t e = 0; e < c_.edges.size(); ++e)
            if (!c_.edges[e].removed) edge(e);
        for (std::size_t f = 0; f < c_.faces.size(); ++f) face(f);
        for (auto& [sym, d] : pending_) dga_.add(std::move(gen_of_.at(sym)), std::move(d));
        dga_.finalize();
        return std::move(dga_);
    }

private:
    long long degree(const std::vector<int>& regions, int p, int q, int shift) const {
        long long d = md_.mu[static_cast<std::size_t>(regions[static_cast<std::size_t>(p)])] -
                      md_.mu[static_cast<std::size_t>(regions[static_cast<std::size_t>(q)])] + shift;
        return reduce_degree(d, md_.m);
    }

    void declare(char kind, const std::string& cell, int p, int q, long long deg) {
        Generator g;
        g.id = gen_id(kind, cell, p, q);
        g.cell = cell;
        g.kind = std::string(1, kind);
        g.i = p + 1;
        g.j = q + 1;
        g.degree = deg;
        g.sym = intern(g.id);
        gen_of_.emplace(g.sym, std::move(g));
    }

    void enumerate() {
        for (std::size_t v = 0; v < c_.vertices.size(); ++v) {
            const VertexCell& vc = c_.vertices[v];
            for (int p = 0; p < vc.n; ++p)
                for (int q = p + 1; q < vc.n; ++q)
                    if (!vc.killed.count({p, q})) declare('a', vc.id, p, q, degree(atlas_.vertex_region[v], p, q, -1));
        }
        for (std::size_t e = 0; e < c_.edges.size(); ++e) {
            const EdgeCell& ec = c_.edges[e];
            if (ec.removed) continue;
            for (int p = 0; p < ec.n; ++p)
                for (int q = p + 1; q < ec.n; ++q)
                    if (!ec.killed.count({p, q})) declare('b', ec.id, p, q, degree(atlas_.edge_region[e], p, q, 0));
        }
        for (std::size_t f = 0; f < c_.faces.size(); ++f) {
            const FaceCell& fc = c_.faces[f];
            for (int p = 0; p < fc.n; ++p)
                for (int q = p + 1; q < fc.n; ++q) declare('c', fc.id, p, q, degree(atlas_.face_region[f], p, q, 1));
        }
    }

    Polynomial slot(char kind, const std::string& cell, const std::map<PosPair, int>* killed, int p, int q) const {
        if (p < 0 || q < 0 || p >= q) return {};
        if (killed) {
            auto it = killed->find({p, q});
            if (it != killed->end()) return it->second ? Polynomial::one() : Polynomial{};
        }
        return Polynomial::gen(intern(gen_id(kind, cell, p, q)));
    }

    Polynomial vslot(int v, int p, int q) const {
        const VertexCell& vc = c_.vertices[static_cast<std::size_t>(v)];
        return slot('a', vc.id, &vc.killed, p, q);
    }

    Polynomial eslot(int e, int p, int q) const {
        const EdgeCell& ec = c_.edges[static_cast<std::size_t>(e)];
        return slot('b', ec.id, &ec.killed, p, q);
    }

    static int at(const std::vector<int>& pos, std::size_t i) { return pos[i]; }

    GenMatrix vertex_matrix(int v, const std::vector<int>& pos) const {
        GenMatrix A(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) A.at(i, j) = vslot(v, at(pos, i), at(pos, j));
        return A;
    }

    GenMatrix edge_matrix(int e, const std::vector<int>& pos) const {
        GenMatrix B(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = i + 1; j < pos.size(); ++j) B.at(i, j) = eslot(e, at(pos, i), at(pos, j));
        return B;
    }

    void emit(char kind, const std::string& cell, int n, const GenMatrix& D) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Sym s = intern(gen_id(kind, cell, p, q));
                if (gen_of_.count(s)) pending_[s] = D.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
            }
    }

    static GenMatrix E(std::size_t n, int p, int q) {
        GenMatrix m(n);
        m.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = Polynomial::one();
        return m;
    }

    void vertex(std::size_t v) {
        const VertexCell& vc = c_.vertices[v];
        std::vector<int> id(static_cast<std::size_t>(vc.n));
        for (int p = 0; p < vc.n; ++p) id[static_cast<std::size_t>(p)] = p;
        GenMatrix A = vertex_matrix(static_cast<int>(v), id);
        emit('a', vc.id, vc.n, A * A);
    }

    void edge(std::size_t e) {
        const EdgeCell& ec = c_.edges[e];
        const auto n = static_cast<std::size_t>(ec.n);
        std::vector<int> id(n);
        for (std::size_t p = 0; p < n; ++p) id[p] = static_cast<int>(p);
        GenMatrix B = unipotent(edge_matrix(static_cast<int>(e), id));
        GenMatrix Ap = vertex_matrix(ec.head, ec.head_pos);
        GenMatrix Am = vertex_matrix(ec.tail, ec.tail_pos);
        for (auto [u, l] : ec.tail_cusps) Am.at(static_cast<std::size_t>(u), static_cast<std::size_t>(l)) += Polynomial::one();
        if (ec.conj) {
            GenMatrix Q = unipotent(E(n, ec.conj->first, ec.conj->second));
            Am = Q * Am * Q;
        }
        emit('b', ec.id, ec.n, Ap * B + B * Am);
    }

    GenMatrix path_product(const FaceCell& fc, const std::vector<FacePath>& path, std::size_t skip) const {
        GenMatrix P = GenMatrix::identity(static_cast<std::size_t>(fc.n));
        for (std::size_t i = skip; i < path.size(); ++i) P = unipotent(edge_matrix(path[i].edge, path[i].pos)) * P;
        return P;
    }

    void face(std::size_t f) {
        const FaceCell& fc = c_.faces[f];
        const auto n = static_cast<std::size_t>(fc.n);
        GenMatrix C(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                C.at(i, j) = Polynomial::gen(intern(gen_id('c', fc.id, static_cast<int>(i), static_cast<int>(j))));
        GenMatrix A1 = vertex_matrix(fc.v1, fc.v1_pos);
        GenMatrix A0 = vertex_matrix(fc.v0, fc.v0_pos);
        for (auto [u, l] : fc.v0_cusps) A0.at(static_cast<std::size_t>(u), static_cast<std::size_t>(l)) += Polynomial::one();
        const GenMatrix I = GenMatrix::identity(n);

        GenMatrix D;
        switch (fc.formula) {
            case FaceFormula::Standard:
                D = A1 * C + C * A0 + path_product(fc, fc.paths[0], 0) + path_product(fc, fc.paths[1], 0);
                break;
            case FaceFormula::DecoratedT:
                D = A1 * C + C * A0 + path_product(fc, fc.paths[0], 0) +
                    path_product(fc, fc.paths[1], 0) * unipotent(E(n, fc.t_pair->first, fc.t_pair->second));
                break;
            case FaceFormula::Swallow13:
            case FaceFormula::DecoratedS13: {
                const int k = fc.sw - 1;  // 0-based labels k, k+1, k+2
                GenMatrix Q = unipotent(E(n, k + 2, k + 1));
                GenMatrix S = I + A0 * E(n, k + 1, k) + E(n, k + 1, k + 2);
                D = A1 * C + C * Q * A0 * Q + path_product(fc, fc.paths[0], 0) * S;
                if (fc.formula == FaceFormula::Swallow13) {
                    const FacePath& d = fc.paths[1].at(0);
                    GenMatrix BD = edge_matrix(d.edge, d.pos);
                    D += path_product(fc, fc.paths[1], 1) * (I + BD * Q);
                } else {
                    D += path_product(fc, fc.paths[1], 0);
                }
                break;
            }
            case FaceFormula::Swallow14: {
                const int l = fc.sw - 1;  // 0-based labels l-2, l-1, l
                GenMatrix Q = unipotent(E(n, l - 1, l - 2));
                GenMatrix S = I + E(n, l, l - 1) * A0 + E(n, l - 2, l - 1);
                const FacePath& d = fc.paths[1].at(0);
                GenMatrix BD = edge_matrix(d.edge, d.pos);
                D = A1 * C + C * Q * A0 * Q + path_product(fc, fc.paths[0], 0) * S +
                    path_product(fc, fc.paths[1], 1) * (I + BD * Q);
                break;
            }
        }
        emit('c', fc.id, fc.n, D);
    }

    const CellComplex& c_;
    SheetAtlas atlas_;
    MaslovData md_;
    Dga dga_;
    std::map<Sym, Generator> gen_of_;
    std::map<Sym, Polynomial> pending_;
};

}  // namespace

Dga build_from_complex(const CellComplex& c, const BuildOptions& opts) { return Assembler(c, opts).run(); }

Dga build_dga(const Decomposition& d, const BuildOptions& opts) { return build_from_complex(transverse_complex(d), opts); }

Dga build_cellular(const ParallelDecomposition& p, bool decorated, const BuildOptions& opts) {
    return build_from_complex(parallel_complex(p, decorated), opts);
}

std::vector<Failure> d_squared(const Dga& dga) {
    std::vector<Failure> out;
    for (const auto& g : dga.gens) {
        Polynomial r = derive(dga.diff, dga.diff.at(g.sym));
        if (!r.is_zero()) out.push_back({g.id, std::move(r), "d^2 is nonzero"});
    }
    return out;
}

std::vector<Failure> degree_check(const Dga& dga) {
    std::vector<Failure> out;
    Grading gr = dga.grading();
    for (const auto& g : dga.gens) {
        const long long want = reduce_degree(g.degree - 1, dga.m);
        std::vector<Word> bad;
        for (const Word& w : dga.diff.at(g.sym).terms())
            if (word_degree(w, gr) != want) bad.push_back(w);
        if (!bad.empty())
            out.push_back({g.id, Polynomial::from_words(std::move(bad)),
                           "terms not of degree " + std::to_string(want)});
    }
    return out;
}

nlohmann::json to_json(const Dga& dga) {
    nlohmann::json gens = nlohmann::json::array();
    nlohmann::json diff = nlohmann::json::object();
    for (const auto& g : dga.gens) {
        gens.push_back({{"id", g.id},
                        {"cell", g.cell},
                        {"kind", g.kind},
                        {"sheets", {g.i, g.j}},
                        {"degree", g.degree}});
        diff[g.id] = dga.diff.at(g.sym).to_string();
    }
    return {{"m", dga.m}, {"generators", gens}, {"diff", diff}};
}

Dga dga_from_json(const nlohmann::json& j) {
    try {
        Dga dga;
        dga.m = j.at("m").get<long long>();
        for (const auto& g : j.at("generators")) {
            Generator x;
            x.id = g.at("id").get<std::string>();
            x.cell = g.at("cell").get<std::string>();
            x.kind = g.at("kind").get<std::string>();
            x.i = g.at("sheets").at(0).get<int>();
            x.j = g.at("sheets").at(1).get<int>();
            x.degree = reduce_degree(g.at("degree").get<long long>(), dga.m);
            x.sym = intern(x.id);
            Polynomial d = parse_polynomial(j.at("diff").at(x.id).get<std::string>());
            dga.add(std::move(x), std::move(d));
        }
        for (const auto& [sym, d] : dga.diff)
            for (const Word& w : d.terms())
                for (Sym s : w)
                    if (!dga.find(s)) throw Error(ErrorCode::UnknownGenerator, "diff mentions unknown generator " + name_of(s));
        dga.finalize();
        return dga;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, std::string("bad DGA document: ") + e.what());
    }
}

nlohmann::json to_json(const std::vector<Failure>& failures) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& f : failures) out.push_back({{"gen", f.gen}, {"residual", f.residual.to_string()}, {"message", f.message}});
    return out;
}

}  // namespace celldga
