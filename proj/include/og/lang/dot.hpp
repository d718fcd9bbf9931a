#pragma once

// Graphviz output for typed game expressions: a layered left-to-right
// diagram with one node per atom, forward edges labeled with their carrier,
// and backward (utility) wires drawn dashed. Identity and swap atoms are
// pure wiring and produce no nodes. Output is a deterministic function of
// the expression.

#include <sstream>
#include <string>
#include <vector>

#include "og/lang/ast.hpp"

namespace og::lang {

namespace dot_detail {

inline std::vector<std::string> factor_names(const SetPtr& s) {
    if (!s || s->is_unit()) return {};
    std::vector<std::string> out;
    if (s->is_product())
        for (const auto& f : s->factors()) out.push_back(f->name());
    else
        out.push_back(s->name());
    return out;
}

struct Sink {
    std::string anchor; // wire ends at this node
    int fwd = -1;       // or continues as out slot [fwd]
};

struct Wiring {
    std::vector<Sink> in_f;
    std::vector<int> out_f;      // net id, or -1 when fed through from in_f
    std::vector<int> out_f_from; // for -1 entries: the in_f slot it continues
    std::vector<Sink> in_b;
    std::vector<int> out_b;
    std::vector<int> out_b_from;
};

struct Net {
    std::string src;
    std::string label;
};

class Emitter {
public:
    std::string run(const GameExpr& e, const std::string& name) {
        Wiring w = emit(e);
        // boundary anchors
        std::ostringstream head;
        head << "digraph \"" << name << "\" {\n";
        head << "  rankdir=LR;\n";
        head << "  node [fontsize=10]; edge [fontsize=9];\n";
        bool have_dom = !w.in_f.empty() || !w.out_b.empty();
        bool have_cod = !w.out_f.empty() || !w.in_b.empty();
        if (have_dom)
            head << "  dom [shape=none, label=\"" << e.dom_b.str() << "\"];\n";
        if (have_cod)
            head << "  cod [shape=none, label=\"" << e.cod_b.str() << "\"];\n";

        auto dom_f = factor_names(e.dom_b.fwd);
        auto cod_b = factor_names(e.cod_b.bwd);
        // forward wires entering from the domain boundary
        for (size_t i = 0; i < w.in_f.size(); ++i) {
            int net = make_net("dom", dom_f[i]);
            resolve_fwd(w, i, net);
        }
        // backward wires entering from the codomain boundary
        for (size_t i = 0; i < w.in_b.size(); ++i) {
            int net = make_net("cod", cod_b[i]);
            resolve_bwd(w, i, net);
        }
        // remaining outputs land on the boundary anchors
        for (int net : w.out_f)
            if (net >= 0) fwd_edge(net, "cod");
        for (int net : w.out_b)
            if (net >= 0) bwd_edge(net, "dom");
        return head.str() + nodes_.str() + edges_.str() + "}\n";
    }

private:
    Wiring emit(const GameExpr& e) {
        using K = GameExpr::Kind;
        switch (e.kind) {
        case K::Seq: {
            Wiring l = emit(*e.left);
            Wiring r = emit(*e.right);
            return bind(std::move(l), std::move(r));
        }
        case K::Tensor: {
            Wiring l = emit(*e.left);
            Wiring r = emit(*e.right);
            return stack(std::move(l), std::move(r));
        }
        case K::Decision: {
            std::string n = node("shape=box", "decision " + e.type_a.str() + " -> " + e.type_b.str() +
                                                  "\\nwith " + e.sel.str());
            return anchored(e, n);
        }
        case K::Lift: {
            std::string label = e.f_name + (e.g_name.empty() ? "" : " / " + e.g_name);
            std::string n = node("shape=trapezium, orientation=270", label);
            if (!e.g_name.empty()) return anchored(e, n);
            // inferred identity backward: the utility line passes under the node
            Wiring w = anchored_fwd_only(e, n);
            pass_through_bwd(e, w);
            return w;
        }
        case K::Ref: {
            std::string n = node("shape=box, peripheries=2", e.ref);
            return anchored(e, n);
        }
        case K::Counit: {
            std::string n = node("shape=point, width=0.08", "");
            Wiring w;
            for (const auto& f : factor_names(e.dom_b.fwd)) {
                (void)f;
                w.in_f.push_back({n, -1});
            }
            for (const auto& f : factor_names(e.dom_b.bwd)) {
                w.out_b.push_back(make_net(n, f));
                w.out_b_from.push_back(-1);
            }
            return w;
        }
        case K::Copy: {
            std::string n = node("shape=point, width=0.12", "");
            Wiring w;
            for (const auto& f : factor_names(e.dom_b.fwd)) {
                (void)f;
                w.in_f.push_back({n, -1});
            }
            for (const auto& f : factor_names(e.cod_b.fwd)) {
                w.out_f.push_back(make_net(n, f));
                w.out_f_from.push_back(-1);
            }
            pass_through_bwd(e, w);
            return w;
        }
        case K::Delete: {
            std::string n = node("shape=point, width=0.08", "");
            Wiring w;
            for (const auto& f : factor_names(e.dom_b.fwd)) {
                (void)f;
                w.in_f.push_back({n, -1});
            }
            pass_through_bwd(e, w);
            return w;
        }
        case K::Id: {
            Wiring w;
            auto fs = factor_names(e.dom_b.fwd);
            for (size_t i = 0; i < fs.size(); ++i) {
                w.in_f.push_back({"", static_cast<int>(i)});
                w.out_f.push_back(-1);
                w.out_f_from.push_back(static_cast<int>(i));
            }
            pass_through_bwd(e, w);
            return w;
        }
        case K::Swap: {
            Wiring w;
            size_t na = factor_names_count(e, true);
            size_t nb = factor_names_count(e, false);
            w.in_f.resize(na + nb);
            w.out_f.assign(na + nb, -1);
            w.out_f_from.assign(na + nb, -1);
            for (size_t i = 0; i < na + nb; ++i) {
                size_t out = i < na ? nb + i : i - na;
                w.in_f[i] = {"", static_cast<int>(out)};
                w.out_f_from[out] = static_cast<int>(i);
            }
            pass_through_bwd(e, w);
            return w;
        }
        }
        return {};
    }

    size_t factor_names_count(const GameExpr& e, bool left) const {
        // dom.fwd of a swap is tensor(A, B); split back via the factor lists
        auto all = factor_names(e.dom_b.fwd);
        size_t na = e.type_a.factors.size();
        return left ? na : all.size() - na;
    }

    Wiring anchored(const GameExpr& e, const std::string& n) {
        Wiring w = anchored_fwd_only(e, n);
        for (const auto& f : factor_names(e.cod_b.bwd)) {
            (void)f;
            w.in_b.push_back({n, -1});
        }
        for (const auto& f : factor_names(e.dom_b.bwd)) {
            w.out_b.push_back(make_net(n, f));
            w.out_b_from.push_back(-1);
        }
        return w;
    }

    Wiring anchored_fwd_only(const GameExpr& e, const std::string& n) {
        Wiring w;
        for (const auto& f : factor_names(e.dom_b.fwd)) {
            (void)f;
            w.in_f.push_back({n, -1});
        }
        for (const auto& f : factor_names(e.cod_b.fwd)) {
            w.out_f.push_back(make_net(n, f));
            w.out_f_from.push_back(-1);
        }
        return w;
    }

    void pass_through_bwd(const GameExpr& e, Wiring& w) {
        auto fs = factor_names(e.cod_b.bwd);
        for (size_t i = 0; i < fs.size(); ++i) {
            w.in_b.push_back({"", static_cast<int>(i)});
            w.out_b.push_back(-1);
            w.out_b_from.push_back(static_cast<int>(i));
        }
    }

    Wiring bind(Wiring l, Wiring r) {
        Wiring out;
        out.in_f = l.in_f;
        out.out_b = l.out_b;
        out.out_b_from = l.out_b_from;
        out.out_f = r.out_f;
        out.out_f_from = r.out_f_from;
        out.in_b = r.in_b;
        // forward wires: left outs feed right ins
        for (size_t i = 0; i < l.out_f.size(); ++i) {
            if (l.out_f[i] >= 0) {
                int slot = resolve_fwd_sink(out, r.in_f[i], l.out_f[i]);
                (void)slot;
            } else {
                // left passes through: the composite consumes at left's in slot
                out.in_f[l.out_f_from[i]] = r.in_f[i];
            }
        }
        // backward wires: right outs feed left ins
        for (size_t i = 0; i < r.out_b.size(); ++i) {
            if (r.out_b[i] >= 0) {
                resolve_bwd_sink(out, l.in_b[i], r.out_b[i]);
            } else {
                out.in_b[r.out_b_from[i]] = l.in_b[i];
            }
        }
        return out;
    }

    static Wiring stack(Wiring l, Wiring r) {
        Wiring out = std::move(l);
        auto shift_sinks = [&](std::vector<Sink>& sinks, size_t offset) {
            for (auto& s : sinks)
                if (s.fwd >= 0) s.fwd += static_cast<int>(offset);
        };
        shift_sinks(r.in_f, out.out_f.size());
        shift_sinks(r.in_b, out.out_b.size());
        auto shift_from = [&](std::vector<int>& from, size_t offset) {
            for (auto& i : from)
                if (i >= 0) i += static_cast<int>(offset);
        };
        shift_from(r.out_f_from, out.in_f.size());
        shift_from(r.out_b_from, out.in_b.size());
        out.in_f.insert(out.in_f.end(), r.in_f.begin(), r.in_f.end());
        out.out_f.insert(out.out_f.end(), r.out_f.begin(), r.out_f.end());
        out.out_f_from.insert(out.out_f_from.end(), r.out_f_from.begin(), r.out_f_from.end());
        out.in_b.insert(out.in_b.end(), r.in_b.begin(), r.in_b.end());
        out.out_b.insert(out.out_b.end(), r.out_b.begin(), r.out_b.end());
        out.out_b_from.insert(out.out_b_from.end(), r.out_b_from.begin(), r.out_b_from.end());
        return out;
    }

    // feed net into a forward sink: draw the edge or patch the out slot
    int resolve_fwd_sink(Wiring& w, const Sink& sink, int net) {
        if (!sink.anchor.empty()) {
            fwd_edge(net, sink.anchor);
            return -1;
        }
        w.out_f[sink.fwd] = net;
        return sink.fwd;
    }
    void resolve_bwd_sink(Wiring& w, const Sink& sink, int net) {
        if (!sink.anchor.empty()) {
            bwd_edge(net, sink.anchor);
            return;
        }
        w.out_b[sink.fwd] = net;
    }
    void resolve_fwd(Wiring& w, size_t slot, int net) { resolve_fwd_sink(w, w.in_f[slot], net); }
    void resolve_bwd(Wiring& w, size_t slot, int net) { resolve_bwd_sink(w, w.in_b[slot], net); }

    std::string node(const std::string& attrs, const std::string& label) {
        std::string id = "n" + std::to_string(next_++);
        nodes_ << "  " << id << " [" << attrs << ", label=\"" << label << "\"];\n";
        return id;
    }
    int make_net(const std::string& src, const std::string& label) {
        nets_.push_back({src, label});
        return static_cast<int>(nets_.size()) - 1;
    }
    void fwd_edge(int net, const std::string& sink) {
        edges_ << "  " << nets_[net].src << " -> " << sink << " [label=\"" << nets_[net].label
               << "\"];\n";
    }
    void bwd_edge(int net, const std::string& sink) {
        edges_ << "  " << nets_[net].src << " -> " << sink << " [label=\"" << nets_[net].label
               << "\", style=dashed, constraint=false];\n";
    }

    std::ostringstream nodes_, edges_;
    std::vector<Net> nets_;
    int next_ = 0;
};

} // namespace dot_detail

inline std::string emit_dot(const GameExpr& typed_expr, const std::string& name = "game") {
    dot_detail::Emitter em;
    return em.run(typed_expr, name);
}

} // namespace og::lang
