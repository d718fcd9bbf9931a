#pragma once

// Multi-valued selection functions: given a continuation k : Y -> R they
// return the subset of Y considered optimal. argmax (optionally on one
// component of a tuple outcome), fixpoint, anti-fixpoint, and explicit
// user tables are supported. The returned subset may be empty; downstream
// code treats that as "no move is acceptable", not as an error.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "og/finite.hpp"

namespace og {

// Index of the c-th factor (1-based) of a product-set element.
inline size_t factor_digit(const SetPtr& s, size_t i, int c) {
    if (!s->is_product() || c < 1 || static_cast<size_t>(c) > s->factors().size())
        throw OutcomeTypeMismatch("set " + s->name() + " has no component " + std::to_string(c));
    size_t block = 1;
    for (size_t j = s->factors().size(); j-- > static_cast<size_t>(c);) block *= s->factors()[j]->size();
    return (i / block) % s->factors()[c - 1]->size();
}

struct SelectionFunction {
    enum class Kind { Argmax, Fix, AntiFix, Table };

    Kind kind = Kind::Argmax;
    std::string name;
    SetPtr choices;              // Y
    SetPtr outcome;              // R; null for argmax until the outcome type is known
    std::optional<int> component; // argmax only, 1-based
    // Table kind: continuation table (as index vector over Y) -> chosen mask.
    std::map<std::vector<uint32_t>, std::vector<bool>> table;

    bool outcome_known() const { return outcome != nullptr; }

    // chosen(k)[y] iff y is selected against continuation k (indices into outcome).
    std::vector<bool> chosen(std::span<const uint32_t> k) const {
        if (!choices) throw Error("selection " + name + " has no choice set");
        if (k.size() != choices->size()) throw Error("selection " + name + ": continuation is not total");
        std::vector<bool> mask(choices->size(), false);
        switch (kind) {
        case Kind::Argmax: {
            if (!outcome) throw Error("selection " + name + ": outcome set unresolved");
            if (choices->size() == 0) return mask;
            std::optional<Rat> best;
            std::vector<Rat> keys(choices->size());
            for (size_t y = 0; y < choices->size(); ++y) {
                keys[y] = numeric_component(outcome->element(k[y]), component);
                if (!best || keys[y] > *best) best = keys[y];
            }
            for (size_t y = 0; y < choices->size(); ++y) mask[y] = (keys[y] == *best);
            return mask;
        }
        case Kind::Fix:
        case Kind::AntiFix: {
            if (!outcome) throw OutcomeTypeMismatch("selection " + name + ": outcome set unresolved");
            if (component) {
                // componentwise form: the c-th factor of the outcome must be Y
                if (!outcome->is_product() ||
                    static_cast<size_t>(*component) > outcome->factors().size() ||
                    !sets_equal(outcome->factors()[*component - 1], choices))
                    throw OutcomeTypeMismatch("selection " + name + ": component " +
                                              std::to_string(*component) + " of " + outcome->name() +
                                              " is not " + choices->name());
                for (size_t y = 0; y < choices->size(); ++y) {
                    bool eq = factor_digit(outcome, k[y], *component) == y;
                    mask[y] = (kind == Kind::Fix) ? eq : !eq;
                }
                return mask;
            }
            if (!sets_equal(outcome, choices))
                throw OutcomeTypeMismatch("selection " + name + " requires a continuation valued in " +
                                          (choices ? choices->name() : "?"));
            for (size_t y = 0; y < choices->size(); ++y)
                mask[y] = (kind == Kind::Fix) ? (k[y] == y) : (k[y] != y);
            return mask;
        }
        case Kind::Table: {
            auto it = table.find(std::vector<uint32_t>(k.begin(), k.end()));
            if (it == table.end()) throw Error("selection " + name + ": no entry for this continuation");
            return it->second;
        }
        }
        throw Error("unreachable");
    }

    bool selects(size_t y, std::span<const uint32_t> k) const { return chosen(k)[y]; }
};

inline SelectionFunction argmax_selection(SetPtr choices, SetPtr outcome,
                                          std::optional<int> component = std::nullopt) {
    SelectionFunction s;
    s.kind = SelectionFunction::Kind::Argmax;
    s.name = component ? "argmax[" + std::to_string(*component) + "]" : "argmax";
    s.choices = std::move(choices);
    s.outcome = std::move(outcome);
    s.component = component;
    return s;
}

inline SelectionFunction fix_selection(SetPtr choices) {
    SelectionFunction s;
    s.kind = SelectionFunction::Kind::Fix;
    s.name = "fix";
    s.outcome = choices;
    s.choices = std::move(choices);
    return s;
}

inline SelectionFunction antifix_selection(SetPtr choices) {
    SelectionFunction s;
    s.kind = SelectionFunction::Kind::AntiFix;
    s.name = "antifix";
    s.outcome = choices;
    s.choices = std::move(choices);
    return s;
}

// Explicit table: one entry per continuation table Y -> R; must be total.
inline SelectionFunction table_selection(std::string name, SetPtr choices, SetPtr outcome,
                                         std::map<std::vector<uint32_t>, std::vector<bool>> entries,
                                         size_t cap = kDefaultFunctionCap) {
    size_t expected = function_count(choices, outcome, cap);
    if (entries.size() != expected)
        throw Error("selection " + name + ": table has " + std::to_string(entries.size()) +
                    " entries, needs one per continuation (" + std::to_string(expected) + ")");
    for (const auto& [k, mask] : entries) {
        if (k.size() != choices->size() || mask.size() != choices->size())
            throw Error("selection " + name + ": malformed table entry");
        for (uint32_t r : k)
            if (r >= outcome->size()) throw Error("selection " + name + ": continuation value out of range");
    }
    SelectionFunction s;
    s.kind = SelectionFunction::Kind::Table;
    s.name = std::move(name);
    s.choices = std::move(choices);
    s.outcome = std::move(outcome);
    s.table = std::move(entries);
    return s;
}

// Componentwise form, as used by normal-form players whose continuation is
// the full outcome tuple: argmax[c] maximises the c-th component, fix[c]
// and antifix[c] compare the chosen move with the c-th component.
inline SelectionFunction with_component(SelectionFunction base, int component, SetPtr outcome = nullptr) {
    base.component = component;
    base.name += "[" + std::to_string(component) + "]";
    if (outcome) base.outcome = std::move(outcome);
    return base;
}

} // namespace og
