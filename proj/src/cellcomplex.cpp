#include "celldga/cellcomplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "celldga/error.hpp"
#include "square_view.hpp"

namespace celldga {

using nlohmann::json;

const EdgeRec* Decomposition::find_edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

const SquareRec* Decomposition::find_square(const std::string& id) const {
    for (const auto& s : squares)
        if (s.id == id) return &s;
    return nullptr;
}

// ---------------------------------------------------------------- JSON

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
    if (!j.is_object()) parse_fail(what + " must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
        if (!known) parse_fail("unknown field '" + it.key() + "' in " + what);
    }
}

std::string get_string(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j.at(key).is_string()) parse_fail(what + ": field '" + key + "' must be a string");
    return j.at(key).get<std::string>();
}

int get_int(const json& j, const char* key, const std::string& what, std::optional<int> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        parse_fail(what + ": missing field '" + key + "'");
    }
    if (!j.at(key).is_number_integer()) parse_fail(what + ": field '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

EdgeTag tag_from(const std::string& s, const std::string& what) {
    if (s == "PV") return EdgeTag::PV;
    if (s == "OneCr") return EdgeTag::OneCr;
    if (s == "TwoCr") return EdgeTag::TwoCr;
    if (s == "Cu") return EdgeTag::Cu;
    parse_fail(what + ": unknown edge tag '" + s + "'");
}

const char* tag_name(EdgeTag t) {
    switch (t) {
        case EdgeTag::PV: return "PV";
        case EdgeTag::OneCr: return "OneCr";
        case EdgeTag::TwoCr: return "TwoCr";
        case EdgeTag::Cu: return "Cu";
    }
    return "PV";
}

}  // namespace

Decomposition decomposition_from_json(const json& j) {
    only_keys(j, {"vertices", "edges", "squares"}, "decomposition");
    Decomposition d;
    if (j.contains("vertices")) {
        if (!j.at("vertices").is_array()) parse_fail("'vertices' must be an array");
        for (const auto& v : j.at("vertices")) {
            if (!v.is_string()) parse_fail("vertex ids must be strings");
            d.vertices.push_back(v.get<std::string>());
        }
    }
    if (j.contains("edges")) {
        if (!j.at("edges").is_array()) parse_fail("'edges' must be an array");
        for (const auto& e : j.at("edges")) {
            only_keys(e, {"id", "tail", "head", "type"}, "edge");
            EdgeRec r;
            r.id = get_string(e, "id", "edge");
            r.tail = get_string(e, "tail", "edge " + r.id);
            r.head = get_string(e, "head", "edge " + r.id);
            if (!e.contains("type")) parse_fail("edge " + r.id + ": missing type");
            const json& t = e.at("type");
            only_keys(t, {"tag", "n", "k"}, "edge type of " + r.id);
            r.type.tag = tag_from(get_string(t, "tag", "edge " + r.id), "edge " + r.id);
            r.type.n = get_int(t, "n", "edge " + r.id);
            r.type.k = get_int(t, "k", "edge " + r.id, 0);
            d.edges.push_back(std::move(r));
        }
    }
    if (j.contains("squares")) {
        if (!j.at("squares").is_array()) parse_fail("'squares' must be an array");
        for (const auto& s : j.at("squares")) {
            only_keys(s, {"id", "type", "n", "k", "l", "reflected", "sides"}, "square");
            SquareRec r;
            r.id = get_string(s, "id", "square");
            const std::string what = "square " + r.id;
            r.type.tag = get_int(s, "type", what);
            r.type.n = get_int(s, "n", what);
            r.type.k = get_int(s, "k", what, 0);
            r.type.l = get_int(s, "l", what, 0);
            if (s.contains("reflected")) {
                if (!s.at("reflected").is_boolean()) parse_fail(what + ": 'reflected' must be a boolean");
                r.type.reflected = s.at("reflected").get<bool>();
            }
            if (!s.contains("sides")) parse_fail(what + ": missing sides");
            const json& sd = s.at("sides");
            only_keys(sd, {"L", "D", "R", "U"}, what + " sides");
            for (int i = 0; i < 4; ++i)
                r.sides[static_cast<std::size_t>(i)] = get_string(sd, side_name(static_cast<Side>(i)), what + " sides");
            d.squares.push_back(std::move(r));
        }
    }
    return d;
}

json to_json(const Decomposition& d) {
    json j;
    j["vertices"] = d.vertices;
    j["edges"] = json::array();
    for (const auto& e : d.edges)
        j["edges"].push_back({{"id", e.id},
                              {"tail", e.tail},
                              {"head", e.head},
                              {"type", {{"tag", tag_name(e.type.tag)}, {"n", e.type.n}, {"k", e.type.k}}}});
    j["squares"] = json::array();
    for (const auto& s : d.squares) {
        json sides;
        for (int i = 0; i < 4; ++i) sides[side_name(static_cast<Side>(i))] = s.sides[static_cast<std::size_t>(i)];
        j["squares"].push_back({{"id", s.id},
                                {"type", s.type.tag},
                                {"n", s.type.n},
                                {"k", s.type.k},
                                {"l", s.type.l},
                                {"reflected", s.type.reflected},
                                {"sides", sides}});
    }
    return j;
}

json to_json(const ValidationReport& r) {
    json j;
    j["valid"] = r.ok();
    j["violations"] = json::array();
    for (const auto& v : r.violations)
        j["violations"].push_back({{"rule", v.rule}, {"where", v.where}, {"message", v.message}});
    return j;
}

// ---------------------------------------------------------------- validation

namespace {

struct Index {
    std::unordered_map<std::string, const EdgeRec*> edges;
    std::unordered_set<std::string> vertices;
};

Index make_index(const Decomposition& d) {
    Index ix;
    for (const auto& v : d.vertices) ix.vertices.insert(v);
    for (const auto& e : d.edges) ix.edges.emplace(e.id, &e);
    return ix;
}

// Checks that only concern ids, edge types, square parameters and incidences.
void structural_checks(const Decomposition& d, const Index& ix, std::vector<Violation>& out) {
    auto add = [&](std::string rule, std::string where, std::string msg) {
        out.push_back({std::move(rule), std::move(where), std::move(msg)});
    };
    std::set<std::string> seen;
    auto unique = [&](const std::string& id, const char* kind) {
        if (!seen.insert(id).second) add("structure", id, std::string("duplicate id (") + kind + ")");
    };
    for (const auto& v : d.vertices) unique(v, "vertex");
    for (const auto& e : d.edges) unique(e.id, "edge");
    for (const auto& s : d.squares) unique(s.id, "square");

    std::map<std::string, int> vertex_n;
    auto note_count = [&](const std::string& v, int n, const std::string& edge) {
        auto [it, fresh] = vertex_n.emplace(v, n);
        if (!fresh && it->second != n)
            add("structure", v,
                "sheet count " + std::to_string(n) + " from edge " + edge + " disagrees with " +
                    std::to_string(it->second));
    };
    for (const auto& e : d.edges) {
        if (!ix.vertices.count(e.tail)) add("structure", e.id, "unknown tail vertex " + e.tail);
        if (!ix.vertices.count(e.head)) add("structure", e.id, "unknown head vertex " + e.head);
        if (!e.type.well_formed()) {
            add("structure", e.id, "malformed edge type " + e.type.to_string());
            continue;
        }
        note_count(e.head, e.type.n, e.id);
        note_count(e.tail, e.type.tail_count(), e.id);
    }

    std::map<std::string, int> borders;
    for (const auto& s : d.squares) {
        SigmaMaps sm;
        try {
            sm = sigma_maps(s.type);
        } catch (const Error& err) {
            add("structure", s.id, err.what());
            continue;
        }
        bool sides_ok = true;
        for (int i = 0; i < 4; ++i) {
            const std::string& eid = s.sides[static_cast<std::size_t>(i)];
            auto it = ix.edges.find(eid);
            if (it == ix.edges.end()) {
                add("structure", s.id, std::string("side ") + side_name(static_cast<Side>(i)) + " names unknown edge " + eid);
                sides_ok = false;
                continue;
            }
            ++borders[eid];
            const EdgeType& want = sm.side_type[static_cast<std::size_t>(i)];
            if (!(it->second->type == want))
                add("structure", s.id,
                    std::string("side ") + side_name(static_cast<Side>(i)) + " edge " + eid + " has type " +
                        it->second->type.to_string() + ", square induces " + want.to_string());
        }
        if (!sides_ok) continue;
        auto E = [&](Side x) { return ix.edges.at(s.sides[static_cast<std::size_t>(x)]); };
        // every side runs from the lower-left toward the upper-right corner
        if (E(Side::L)->tail != E(Side::D)->tail)
            add("A1", s.id, "L and D do not start at a common lower-left corner");
        if (E(Side::L)->head != E(Side::U)->tail)
            add("A1", s.id, "L does not end where U starts (upper-left corner)");
        if (E(Side::D)->head != E(Side::R)->tail)
            add("A1", s.id, "D does not end where R starts (lower-right corner)");
        if (E(Side::R)->head != E(Side::U)->head)
            add("A1", s.id, "R and U do not end at a common upper-right corner");
    }
    for (const auto& [eid, count] : borders)
        if (count > 2) add("structure", eid, "edge borders " + std::to_string(count) + " squares");
}

std::vector<detail::SquareView> views(const Decomposition& d, const Index& ix) {
    std::vector<detail::SquareView> out;
    out.reserve(d.squares.size());
    for (const auto& s : d.squares) out.push_back(detail::make_view(s, ix.edges));
    return out;
}

ArcPlacement place_arcs(const std::vector<detail::SquareView>& vs) {
    ArcPlacement p;
    for (const auto& v : vs) {
        for (const auto& a : v.model.arcs) {
            PlacedArc pa;
            pa.square = v.rec->id;
            pa.kind = a.kind;
            pa.i = a.i;
            pa.j = a.j;
            pa.on_vertex = a.place.on_corner;
            pa.cell = a.place.on_corner ? v.ll : v.edge_of(a.place.side);
            pa.edge_value = a.edge_value;
            p.arcs.push_back(std::move(pa));
        }
        if (v.model.has_codim2) p.codim2.emplace_back(v.rec->id, v.ll);
    }
    return p;
}

void check_A2(const Decomposition& d, const std::vector<detail::SquareView>& vs, std::vector<Violation>& out) {
    // (vertex, tail-position pair) -> outgoing edges with that crossing
    std::map<std::pair<std::string, std::pair<int, int>>, std::vector<std::string>> T;
    for (const auto& e : d.edges) {
        std::vector<int> tp = e.type.tail_positions();
        for (auto [p, q] : e.type.crossings()) {
            int a = tp[static_cast<std::size_t>(p - 1)], b = tp[static_cast<std::size_t>(q - 1)];
            T[{e.tail, {std::min(a, b), std::max(a, b)}}].push_back(e.id);
        }
    }
    for (const auto& [key, es] : T) {
        if (es.size() <= 1) continue;
        std::string where = key.first + " sheets " + std::to_string(key.second.first) + "," +
                            std::to_string(key.second.second);
        if (es.size() > 2) {
            out.push_back({"A2", where, std::to_string(es.size()) + " outgoing edges cross the same pair"});
            continue;
        }
        bool type3 = std::any_of(vs.begin(), vs.end(), [&](const detail::SquareView& v) {
            if (v.rec->type.tag != 3 || v.ll != key.first) return false;
            std::set<std::string> ld{v.edge_of(Side::L), v.edge_of(Side::D)};
            return ld == std::set<std::string>(es.begin(), es.end());
        });
        if (!type3)
            out.push_back({"A2", where, "edges " + es[0] + " and " + es[1] +
                                            " cross the same pair but are not the L/D sides of a Type 3 square"});
    }
}

std::set<std::string> corner_set(const detail::SquareView& v, const Index& ix) {
    std::set<std::string> c;
    for (int i = 0; i < 4; ++i) {
        const EdgeRec* e = ix.edges.at(v.edge[static_cast<std::size_t>(i)]);
        c.insert(e->tail);
        c.insert(e->head);
    }
    return c;
}

void check_A3(const std::vector<detail::SquareView>& vs, const Index& ix, std::vector<Violation>& out) {
    std::vector<const detail::SquareView*> t3;
    for (const auto& v : vs)
        if (v.rec->type.tag == 3) t3.push_back(&v);
    for (std::size_t a = 0; a < t3.size(); ++a)
        for (std::size_t b = a + 1; b < t3.size(); ++b) {
            std::set<std::string> ea(t3[a]->edge.begin(), t3[a]->edge.end());
            bool share_edge = std::any_of(t3[b]->edge.begin(), t3[b]->edge.end(),
                                          [&](const std::string& e) { return ea.count(e) > 0; });
            std::set<std::string> ca = corner_set(*t3[a], ix), cb = corner_set(*t3[b], ix);
            bool share_vertex = std::any_of(ca.begin(), ca.end(), [&](const std::string& x) { return cb.count(x) > 0; });
            if (share_edge || share_vertex)
                out.push_back({"A3", t3[a]->rec->id + "," + t3[b]->rec->id,
                               std::string("Type 3 squares share a boundary ") + (share_edge ? "edge" : "vertex")});
        }
}

void check_A4(const std::vector<detail::SquareView>& vs, const Index& ix, const ArcPlacement& pl,
              std::vector<Violation>& out) {
    std::map<std::string, std::set<std::string>> by_edge;
    for (const auto& a : pl.arcs)
        if (!a.on_vertex) by_edge[a.cell].insert(a.square);
    for (const auto& [edge, squares] : by_edge)
        if (squares.size() > 1) {
            std::string names;
            for (const auto& s : squares) names += (names.empty() ? "" : ",") + s;
            out.push_back({"A4", edge, "arcs from distinct squares (" + names + ") are shifted onto the same edge"});
        }

    // Closed crossing-locus components made only of corner-shifted arcs.
    struct Node {
        std::string square;
        bool corner_only;
        std::vector<std::string> ends;
    };
    std::vector<Node> nodes;
    std::map<std::string, std::vector<std::size_t>> by_end;
    for (const auto& v : vs) {
        for (const auto& a : v.model.arcs) {
            if (a.kind != ArcKind::Crossing) continue;
            Node nd{v.rec->id, a.place.on_corner, {}};
            for (int s = 0; s < 4; ++s) {
                const EdgeRec* e = ix.edges.at(v.edge[static_cast<std::size_t>(s)]);
                const auto& pos = v.side_pos[static_cast<std::size_t>(s)];
                int p = pos[static_cast<std::size_t>(a.i)], q = pos[static_cast<std::size_t>(a.j)];
                if (!p || !q) continue;
                for (auto [x, y] : e->type.crossings())
                    if (std::min(p, q) == x && std::max(p, q) == y)
                        nd.ends.push_back(e->id + "#" + std::to_string(x) + "," + std::to_string(y));
            }
            for (const auto& key : nd.ends) by_end[key].push_back(nodes.size());
            nodes.push_back(std::move(nd));
        }
    }
    std::vector<int> comp(nodes.size(), -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> stack{s}, members;
        comp[s] = ncomp;
        bool closed = true, corner_only = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            members.push_back(u);
            corner_only = corner_only && nodes[u].corner_only;
            if (nodes[u].ends.size() < 2) closed = false;
            for (const auto& key : nodes[u].ends) {
                const auto& nb = by_end[key];
                if (nb.size() < 2) closed = false;
                for (std::size_t w : nb)
                    if (comp[w] < 0) {
                        comp[w] = ncomp;
                        stack.push_back(w);
                    }
            }
        }
        ++ncomp;
        if (closed && corner_only)
            out.push_back({"A4", nodes[s].square, "closed crossing-locus component is shifted to isolated vertices"});
    }
}

}  // namespace

ValidationReport validate(const Decomposition& d) {
    ValidationReport r;
    Index ix = make_index(d);
    structural_checks(d, ix, r.violations);
    if (!r.ok()) return r;
    auto vs = views(d, ix);
    check_A2(d, vs, r.violations);
    check_A3(vs, ix, r.violations);
    check_A4(vs, ix, place_arcs(vs), r.violations);
    return r;
}

void require_valid(const Decomposition& d) {
    ValidationReport r = validate(d);
    if (r.ok()) return;
    std::ostringstream os;
    os << "invalid decomposition:";
    for (const auto& v : r.violations) os << " [" << v.rule << " " << v.where << ": " << v.message << "]";
    throw Error(ErrorCode::InvalidDecomposition, os.str());
}

ArcPlacement shift_singular(const Decomposition& d) {
    Index ix = make_index(d);
    std::vector<Violation> errs;
    structural_checks(d, ix, errs);
    if (!errs.empty())
        throw Error(ErrorCode::InvalidDecomposition, "cannot shift arcs: " + errs.front().where + ": " + errs.front().message);
    return place_arcs(views(d, ix));
}

// ---------------------------------------------------------------- E_par

namespace {

bool subdivided_type(int tag) { return tag == 5 || tag == 6 || tag == 8 || tag == 12; }

std::string split_vertex_id(const std::string& e) { return e + ".x"; }
std::string upper_half_id(const std::string& e) { return e + ".p"; }
std::string lower_half_id(const std::string& e) { return e + ".m"; }

}  // namespace

ParallelDecomposition to_parallel(const Decomposition& d) {
    require_valid(d);
    Index ix = make_index(d);
    ParallelDecomposition out;
    out.base = d;
    std::set<std::string> split;
    for (const auto& s : d.squares) {
        if (!subdivided_type(s.type.tag)) continue;
        detail::SquareView v = detail::make_view(s, ix.edges);
        Subdivision sub;
        sub.square = s.id;
        sub.tag = s.type.tag;
        auto split_edge = [&](const std::string& e, std::string& vx, std::string& plus, std::string& minus) {
            vx = split_vertex_id(e);
            plus = upper_half_id(e);
            minus = lower_half_id(e);
            if (split.insert(e).second) {
                out.added_vertices += 1;
                out.added_edges += 2;
                out.removed_edges += 1;
            }
        };
        sub.split_R = v.edge_of(Side::R);
        split_edge(sub.split_R, sub.vertex_R, sub.R_plus, sub.R_minus);
        if (s.type.tag == 6) {
            sub.split_L = v.edge_of(Side::L);
            split_edge(sub.split_L, sub.vertex_L, sub.L_plus, sub.L_minus);
        }
        sub.C = s.id + ".C";
        sub.upper = s.id + ".up";
        sub.lower = s.id + ".lo";
        out.added_edges += 1;
        out.added_faces += 1;
        out.subdivisions.push_back(std::move(sub));
    }
    return out;
}

json to_json(const ParallelDecomposition& p) {
    json j = to_json(p.base);
    j["subdivisions"] = json::array();
    for (const auto& s : p.subdivisions) {
        json r{{"square", s.square}, {"type", s.tag}, {"split_R", s.split_R}, {"vertex_R", s.vertex_R},
               {"R_plus", s.R_plus}, {"R_minus", s.R_minus}, {"C", s.C}, {"upper", s.upper}, {"lower", s.lower}};
        if (!s.split_L.empty()) {
            r["split_L"] = s.split_L;
            r["vertex_L"] = s.vertex_L;
            r["L_plus"] = s.L_plus;
            r["L_minus"] = s.L_minus;
        }
        j["subdivisions"].push_back(std::move(r));
    }
    j["added"] = {{"vertices", p.added_vertices},
                  {"edges", p.added_edges},
                  {"faces", p.added_faces},
                  {"removed_edges", p.removed_edges}};
    return j;
}

}  // namespace celldga
