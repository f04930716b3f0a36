#include "bpm/genred.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace bpm::genred {

u64 gen_table::tri_index(u32 m, u32 i, u32 j) {
    check_arg(1 <= i && i <= j && j <= m - 1, "table cell out of range");
    // cells (i,i..m-1) laid out row by row
    u64 before = u64(i - 1) * (m - 1) - u64(i - 1) * (i - 2) / 2;
    return before + (j - i);
}

u32 gen_table::at(u32 i, u32 j) const {
    if (i > j) std::swap(i, j);
    return entries[tri_index(m, i, j)];
}

bool gen_eval(const gen_table& t) {
    check_arg(t.m >= 2, "GEN needs at least two elements");
    check_arg(t.entries.size() == gen_table::cell_count(t.m), "table size mismatch");
    for (u32 v : t.entries) check_arg(v >= 1 && v <= t.m, "table entry out of range");
    std::vector<u8> in(t.m + 1, 0);
    in[1] = 1;
    std::vector<u32> work{1};
    auto add = [&](u32 e) {
        if (!in[e]) {
            in[e] = 1;
            if (e <= t.m - 1) work.push_back(e);
        }
    };
    add(t.at(1, 1));  // the explicit seed 1*1
    for (size_t i = 0; i < work.size(); ++i) {
        u32 e = work[i];
        for (u32 s = 1; s <= t.m - 1; ++s)
            if (in[s]) add(t.at(std::min(e, s), std::max(e, s)));
    }
    return in[t.m] != 0;
}

u32 circuit::eval(std::span<const u32> x) const {
    check_arg(x.size() == n_inputs, "circuit input arity mismatch");
    std::vector<u32> val(gates.size());
    for (u32 g = 0; g < gates.size(); ++g) {
        const gate& gt = gates[g];
        switch (gt.kind) {
            case op::input: val[g] = x[gt.a - 1]; break;
            case op::constant: val[g] = gt.a; break;
            case op::not_gate: val[g] = 1 - val[gt.a]; break;
            case op::and_gate: val[g] = val[gt.a] & val[gt.b]; break;
            case op::or_gate: val[g] = val[gt.a] | val[gt.b]; break;
        }
    }
    return val[output];
}

u32 circuit::gate_count() const {
    u32 c = 0;
    for (const gate& g : gates)
        if (g.kind != op::input && g.kind != op::constant) ++c;
    return c;
}

bool circuit::distinct_input_pairs() const {
    std::set<std::pair<u32, u32>> pairs;
    for (const gate& g : gates) {
        std::pair<u32, u32> key;
        switch (g.kind) {
            case op::not_gate: key = {g.a, g.a}; break;
            case op::and_gate:
            case op::or_gate: key = {std::min(g.a, g.b), std::max(g.a, g.b)}; break;
            default: continue;
        }
        if (!pairs.insert(key).second) return false;
    }
    return true;
}

circuit parse_circuit(std::istream& is) {
    circuit c;
    std::map<std::string, u32> ids;
    std::string line;
    std::string last_token;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string name, kind;
        if (!(ls >> name)) continue;
        if (!(ls >> kind)) {
            last_token = name;  // the final line names the output gate
            continue;
        }
        circuit::gate g;
        auto ref = [&](const std::string& t) -> u32 {
            auto it = ids.find(t);
            check_arg(it != ids.end(), "gate '" + t + "' used before definition");
            return it->second;
        };
        if (kind == "INPUT") {
            u32 idx;
            check_arg(static_cast<bool>(ls >> idx) && idx >= 1, "INPUT needs a 1-based index");
            g.kind = circuit::op::input;
            g.a = idx;
            c.n_inputs = std::max(c.n_inputs, idx);
        } else if (kind == "CONST") {
            u32 b;
            check_arg(static_cast<bool>(ls >> b) && b <= 1, "CONST needs a bit");
            g.kind = circuit::op::constant;
            g.a = b;
        } else if (kind == "NOT") {
            std::string t;
            check_arg(static_cast<bool>(ls >> t), "NOT needs one operand");
            g.kind = circuit::op::not_gate;
            g.a = ref(t);
        } else if (kind == "AND" || kind == "OR") {
            std::string t1, t2;
            check_arg(static_cast<bool>(ls >> t1 >> t2), kind + " needs two operands");
            g.kind = kind == "AND" ? circuit::op::and_gate : circuit::op::or_gate;
            g.a = ref(t1);
            g.b = ref(t2);
        } else {
            throw argument_error("unknown gate kind '" + kind + "'");
        }
        check_arg(!ids.count(name), "gate '" + name + "' defined twice");
        ids[name] = static_cast<u32>(c.gates.size());
        c.gates.push_back(g);
    }
    check_arg(!c.gates.empty(), "empty circuit");
    check_arg(!last_token.empty(), "final line must name the output gate");
    auto it = ids.find(last_token);
    check_arg(it != ids.end(), "output gate '" + last_token + "' is not defined");
    c.output = it->second;
    return c;
}

std::string circuit_to_string(const circuit& c) {
    std::ostringstream os;
    for (u32 g = 0; g < c.gates.size(); ++g) {
        const auto& gt = c.gates[g];
        os << 'g' << g << ' ';
        switch (gt.kind) {
            case circuit::op::input: os << "INPUT " << gt.a; break;
            case circuit::op::constant: os << "CONST " << gt.a; break;
            case circuit::op::not_gate: os << "NOT g" << gt.a; break;
            case circuit::op::and_gate: os << "AND g" << gt.a << " g" << gt.b; break;
            case circuit::op::or_gate: os << "OR g" << gt.a << " g" << gt.b; break;
        }
        os << '\n';
    }
    os << 'g' << c.output << '\n';
    return os.str();
}

circuit fold_constants(const circuit& c) {
    circuit out;
    out.n_inputs = c.n_inputs;
    // value: -1 unknown, 0/1 constant
    std::vector<int> cval(c.gates.size(), -1);
    std::vector<u32> remap(c.gates.size(), ~0u);
    auto emit = [&](circuit::gate g) {
        out.gates.push_back(g);
        return static_cast<u32>(out.gates.size() - 1);
    };
    for (u32 g = 0; g < c.gates.size(); ++g) {
        const auto& gt = c.gates[g];
        switch (gt.kind) {
            case circuit::op::input: remap[g] = emit(gt); break;
            case circuit::op::constant: cval[g] = static_cast<int>(gt.a); break;
            case circuit::op::not_gate:
                if (cval[gt.a] >= 0) cval[g] = 1 - cval[gt.a];
                else remap[g] = emit({circuit::op::not_gate, remap[gt.a], 0});
                break;
            case circuit::op::and_gate:
            case circuit::op::or_gate: {
                bool is_and = gt.kind == circuit::op::and_gate;
                int va = cval[gt.a], vb = cval[gt.b];
                if (va >= 0 && vb >= 0) {
                    cval[g] = is_and ? (va & vb) : (va | vb);
                } else if (va >= 0 || vb >= 0) {
                    int cv = va >= 0 ? va : vb;
                    u32 live = va >= 0 ? gt.b : gt.a;
                    if ((is_and && cv == 1) || (!is_and && cv == 0)) {
                        remap[g] = remap[live];  // absorbed
                    } else {
                        cval[g] = cv;  // dominating constant
                    }
                } else {
                    remap[g] = emit({gt.kind, remap[gt.a], remap[gt.b]});
                }
                break;
            }
        }
    }
    check_arg(cval[c.output] < 0, "circuit folds to a constant; nothing to project");
    out.output = remap[c.output];
    return out;
}

projection project_to_gen(const circuit& c) {
    check_arg(c.n_inputs >= 1, "projection needs at least one input");
    for (const auto& g : c.gates)
        check_arg(g.kind != circuit::op::constant,
                  "fold constants away before projecting");
    check_arg(c.gates[c.output].kind != circuit::op::input,
              "projection needs at least one real gate");
    for (const auto& g : c.gates) {
        if (g.kind == circuit::op::not_gate)
            check_arg(g.a != c.output, "the output gate must not feed another gate");
        if (g.kind == circuit::op::and_gate || g.kind == circuit::op::or_gate)
            check_arg(g.a != c.output && g.b != c.output,
                      "the output gate must not feed another gate");
    }
    check_arg(c.distinct_input_pairs(), "two gates share an input pair");

    u32 n = c.n_inputs;
    u32 S = c.gate_count();
    projection pr;
    pr.n_inputs = n;
    pr.m = n + 1 + 2 * n + 2 * S;
    pr.elem_name.assign(pr.m + 1, "");

    // element ids: dollar chain, X pairs, gate pairs in gate order with the
    // output's true element extracted to m
    std::vector<u32> dollar(n + 1);
    for (u32 i = 0; i <= n; ++i) {
        dollar[i] = i + 1;
        pr.elem_name[i + 1] = "$" + std::to_string(i);
    }
    std::vector<std::array<u32, 2>> xelem(n + 1);
    u32 next = n + 2;
    for (u32 i = 1; i <= n; ++i)
        for (u32 b = 0; b <= 1; ++b) {
            xelem[i][b] = next;
            pr.elem_name[next] = "X" + std::to_string(i) + "_" + std::to_string(b);
            ++next;
        }
    std::vector<std::array<u32, 2>> gelem(c.gates.size(), {0, 0});
    for (u32 g = 0; g < c.gates.size(); ++g) {
        const auto& gt = c.gates[g];
        if (gt.kind == circuit::op::input) continue;
        for (u32 b = 0; b <= 1; ++b) {
            if (g == c.output && b == 1) continue;  // reserved for m
            gelem[g][b] = next;
            pr.elem_name[next] = "g" + std::to_string(g) + "_" + std::to_string(b);
            ++next;
        }
    }
    gelem[c.output][1] = pr.m;
    pr.elem_name[pr.m] = "g" + std::to_string(c.output) + "_1";
    check_invariant(next == pr.m, "element numbering mismatch");

    auto elem = [&](u32 gate_id, u32 b) -> u32 {
        const auto& gt = c.gates[gate_id];
        if (gt.kind == circuit::op::input) return xelem[gt.a][b];
        return gelem[gate_id][b];
    };

    // default every cell to $0, then install the rules
    pr.cells.assign(gen_table::cell_count(pr.m), projection::cell{});
    for (auto& cl : pr.cells) cl.value = dollar[0];
    std::vector<u8> installed(pr.cells.size(), 0);
    auto cell_at = [&](u32 i, u32 j) -> projection::cell& {
        if (i > j) std::swap(i, j);
        u64 t = gen_table::tri_index(pr.m, i, j);
        check_arg(!installed[t], "two gates collide on one table cell");
        installed[t] = 1;
        return pr.cells[t];
    };

    for (u32 i = 0; i + 1 <= n; ++i) {  // rule 1: $0 * $i = $(i+1)
        projection::cell& cl = cell_at(dollar[0], dollar[i]);
        cl.value = dollar[i + 1];
    }
    for (u32 i = 1; i <= n; ++i) {  // rule 2: $i * $i selects (X_i, x_i)
        projection::cell& cl = cell_at(dollar[i], dollar[i]);
        cl.is_var = true;
        cl.var = i;
        cl.if0 = xelem[i][0];
        cl.if1 = xelem[i][1];
    }
    for (u32 g = 0; g < c.gates.size(); ++g) {  // rules 3 and 4
        const auto& gt = c.gates[g];
        if (gt.kind == circuit::op::not_gate) {
            for (u32 a = 0; a <= 1; ++a) {
                projection::cell& cl = cell_at(elem(gt.a, a), elem(gt.a, a));
                cl.value = elem(g, 1 - a);
            }
        } else if (gt.kind == circuit::op::and_gate || gt.kind == circuit::op::or_gate) {
            bool is_and = gt.kind == circuit::op::and_gate;
            std::set<std::pair<u32, u32>> done;
            for (u32 a = 0; a <= 1; ++a)
                for (u32 b = 0; b <= 1; ++b) {
                    u32 e1 = elem(gt.a, a), e2 = elem(gt.b, b);
                    auto key = std::minmax(e1, e2);
                    if (!done.insert(key).second) continue;  // same cell, same value
                    projection::cell& cl = cell_at(key.first, key.second);
                    cl.value = elem(g, is_and ? (a & b) : (a | b));
                }
        }
    }
    return pr;
}

gen_table projection::instantiate(std::span<const u32> x) const {
    check_arg(x.size() == n_inputs, "projection input arity mismatch");
    gen_table t;
    t.m = m;
    t.entries.resize(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        const cell& cl = cells[i];
        t.entries[i] = cl.is_var ? (x[cl.var - 1] ? cl.if1 : cl.if0) : cl.value;
    }
    return t;
}

u64 projection::var_controlled_cells(u32 var) const {
    u64 c = 0;
    for (const cell& cl : cells)
        if (cl.is_var && cl.var == var) ++c;
    return c;
}

verify_result verify_projection(const circuit& c) {
    check_arg(c.n_inputs <= 10, "projection verification limited to 10 inputs");
    check_arg(c.gate_count() <= 40, "projection verification limited to 40 gates");
    projection pr = project_to_gen(c);
    verify_result res;
    res.read_once = true;
    for (u32 i = 1; i <= c.n_inputs; ++i)
        if (pr.var_controlled_cells(i) != 1) res.read_once = false;
    std::vector<u32> x(c.n_inputs);
    for (u64 v = 0; v < (u64(1) << c.n_inputs); ++v) {
        for (u32 i = 0; i < c.n_inputs; ++i) x[i] = (v >> (c.n_inputs - 1 - i)) & 1;
        u32 want = c.eval(x);
        bool got = gen_eval(pr.instantiate(x));
        ++res.tested;
        if (want != (got ? 1u : 0u)) {
            res.first_violation = static_cast<i64>(v);
            res.ok = false;
            return res;
        }
    }
    res.ok = res.read_once;
    return res;
}

// --- BRS circuit -----------------------------------------------------------

namespace {

// Gate factory keeping the distinct-input-pair property by construction.
// Diagonal cells {w,w} are reserved for the first copy OR(w,w); negation
// always goes through a fresh private copy, and pair conflicts reroute one
// operand through a fresh copy. Every copy is handed out once.
struct builder {
    circuit c;
    std::map<std::tuple<u8, u32, u32>, u32> cache;
    std::set<std::pair<u32, u32>> pairs;
    std::map<u32, u32> last_copy;  // wire -> newest copy in its chain
    std::map<u32, u32> not_cache;

    u32 raw(circuit::op k, u32 a, u32 b) {
        c.gates.push_back({k, a, b});
        return static_cast<u32>(c.gates.size() - 1);
    }
    void take_pair(u32 a, u32 b) {
        bool fresh = pairs.insert({std::min(a, b), std::max(a, b)}).second;
        check_invariant(fresh, "builder reused an input pair");
    }
    u32 input(u32 i) {
        auto key = std::make_tuple(u8(0), i, 0u);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        u32 g = raw(circuit::op::input, i, 0);
        c.n_inputs = std::max(c.n_inputs, i);
        cache[key] = g;
        return g;
    }
    // fresh passthrough: OR(w,w) the first time, then OR(w, previous copy)
    u32 copy(u32 w) {
        auto it = last_copy.find(w);
        u32 partner = (it == last_copy.end()) ? w : it->second;
        take_pair(w, partner);
        u32 g = raw(circuit::op::or_gate, w, partner);
        last_copy[w] = g;
        return g;
    }
    u32 bnot(u32 a) {
        auto it = not_cache.find(a);
        if (it != not_cache.end()) return it->second;
        u32 ca = copy(a);  // private, so its diagonal is free
        take_pair(ca, ca);
        u32 g = raw(circuit::op::not_gate, ca, ca);
        not_cache[a] = g;
        return g;
    }
    u32 binary(circuit::op k, u32 a, u32 b) {
        if (a == b) return a;  // AND/OR idempotence
        if (a > b) std::swap(a, b);
        auto key = std::make_tuple(u8(k == circuit::op::and_gate ? 2 : 3), a, b);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        u32 bb = b;
        if (pairs.count({a, b})) bb = copy(b);  // fresh, so {a,bb} is free
        take_pair(a, bb);
        u32 g = raw(k, a, bb);
        cache[key] = g;
        return g;
    }
    u32 band(u32 a, u32 b) { return binary(circuit::op::and_gate, a, b); }
    u32 bor(u32 a, u32 b) { return binary(circuit::op::or_gate, a, b); }
    u32 bxor(u32 a, u32 b) { return bor(band(a, bnot(b)), band(bnot(a), b)); }
};

}  // namespace

circuit brs_circuit(u32 d) {
    check_arg(d <= 2, "BRS circuit limited to d <= 2");
    u32 n = u32(1) << d;
    builder B;
    // variable order matches roster::gen_brs: x pairs then y pairs
    auto x1 = [&](u32 a) { return B.input(2 * a + 1); };
    auto x2 = [&](u32 a) { return B.input(2 * a + 2); };
    auto y1 = [&](u32 b) { return B.input(2 * n + 2 * b + 1); };
    auto y2 = [&](u32 b) { return B.input(2 * n + 2 * b + 2); };

    // one-hot sum-residue wires of a bit pair: (==0, ==1, ==2)
    struct one_hot {
        u32 w0, w1, w2;
    };
    auto pair_onehot = [&](u32 u, u32 v) -> one_hot {
        u32 both = B.band(u, v);
        u32 neither = B.band(B.bnot(u), B.bnot(v));
        u32 exactly1 = B.bxor(u, v);
        return {neither, exactly1, both};
    };
    std::vector<one_hot> xs, ys;
    for (u32 a = 0; a < n; ++a) xs.push_back(pair_onehot(x1(a), x2(a)));
    for (u32 b = 0; b < n; ++b) ys.push_back(pair_onehot(y1(b), y2(b)));

    // term residue one-hot for (a,b): product of the two sums, sign applied
    auto term_onehot = [&](u32 a, u32 b) -> one_hot {
        bool neg = popcount64(a & b) & 1;
        u32 t0 = B.bor(xs[a].w0, ys[b].w0);
        u32 same = B.bor(B.band(xs[a].w1, ys[b].w1), B.band(xs[a].w2, ys[b].w2));
        u32 diff = B.bor(B.band(xs[a].w1, ys[b].w2), B.band(xs[a].w2, ys[b].w1));
        u32 t1 = neg ? diff : same;
        u32 t2 = neg ? same : diff;
        return {t0, t1, t2};
    };

    // accumulate mod 3 in one-hot state, seeded by the first term
    one_hot st = term_onehot(0, 0);
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b) {
            if (a == 0 && b == 0) continue;
            one_hot t = term_onehot(a, b);
            one_hot nx;
            nx.w0 = B.bor(B.bor(B.band(st.w0, t.w0), B.band(st.w1, t.w2)),
                          B.band(st.w2, t.w1));
            nx.w1 = B.bor(B.bor(B.band(st.w0, t.w1), B.band(st.w1, t.w0)),
                          B.band(st.w2, t.w2));
            nx.w2 = B.bor(B.bor(B.band(st.w0, t.w2), B.band(st.w1, t.w1)),
                          B.band(st.w2, t.w0));
            st = nx;
        }
    // make sure the output gate feeds nothing: give it a fresh buffer
    B.c.output = B.copy(st.w0);
    check_invariant(B.c.distinct_input_pairs(), "BRS circuit has a duplicate input pair");
    return B.c;
}

}  // namespace bpm::genred
