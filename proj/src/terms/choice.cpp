// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "unreal/terms.hpp"

namespace unreal {

ChoiceString ChoiceString::from_integer(const Integer& n) {
    if (n < 0) {
        throw std::invalid_argument("choice strings encode nonnegative integers");
    }
    std::vector<bool> bits;
    Integer rest = n;
    while (rest != 0) {
        bits.push_back(static_cast<bool>(rest & 1));
        rest >>= 1;
    }
    return ChoiceString(std::move(bits));
}

ChoiceString ChoiceString::from_numeral(std::string_view digits) {
    std::vector<bool> bits;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it != '0' && *it != '1') {
            throw std::invalid_argument("not a base-2 numeral: '" + std::string(digits) + "'");
        }
        bits.push_back(*it == '1');
    }
    return ChoiceString(std::move(bits));
}

Integer ChoiceString::to_integer() const {
    Integer n = 0;
    for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
        n <<= 1;
        if (*it) {
            n |= 1;
        }
    }
    return n;
}

std::string ChoiceString::to_numeral() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
        out += *it ? '1' : '0';
    }
    return out;
}

ChoiceString ChoiceString::padded(const ChoiceString& padding) const {
    std::vector<bool> bits = bits_;
    bits.insert(bits.end(), padding.bits_.begin(), padding.bits_.end());
    return ChoiceString(std::move(bits));
}

ChoiceString ChoiceString::prefix(std::size_t n) const {
    std::vector<bool> bits(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(std::min(n, bits_.size())));
    bits.resize(n, false);
    return ChoiceString(std::move(bits));
}

std::vector<bool> production_code(std::size_t index, std::size_t count) {
    if (index == 0 || index > count) {
        throw std::out_of_range("production index out of range");
    }
    std::vector<bool> code(index - 1, false);
    if (index < count) {
        code.push_back(true);
    }
    return code;
}

std::size_t read_production(BitReader& reader, std::size_t count) {
    for (std::size_t j = 1; j < count; ++j) {
        if (reader.next()) {
            return j;
        }
    }
    return count;
}

ChoiceString encode_number(const Term& t, const Rtg& grammar) {
    std::vector<bool> bits;
    std::vector<const Term*> stack{&t};
    while (!stack.empty()) {
        const Term* n = stack.back();
        stack.pop_back();
        const ProductionRef ref = n->produced_by();
        if (ref.nonterminal >= grammar.nonterminals().size() || ref.index == 0 ||
            ref.index > grammar.productions(ref.nonterminal).size()) {
            throw TermError("term node '" + n->symbol().name + "' carries an annotation outside the grammar");
        }
        const Production& p = grammar.production(ref);
        if (p.symbol->name != n->symbol().name || p.rhs.size() != n->children().size()) {
            throw TermError("term node '" + n->symbol().name + "' is not built by production " + std::to_string(ref.index) +
                            " of " + grammar.nonterminal(ref.nonterminal).name);
        }
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            if (n->children()[i]->produced_by().nonterminal != p.rhs[i]) {
                throw TermError("child " + std::to_string(i + 1) + " of '" + n->symbol().name +
                                "' is not derived from " + grammar.nonterminal(p.rhs[i]).name);
            }
        }
        const auto code = production_code(ref.index, grammar.productions(ref.nonterminal).size());
        bits.insert(bits.end(), code.begin(), code.end());
        for (auto it = n->children().rbegin(); it != n->children().rend(); ++it) {
            stack.push_back(it->get());
        }
    }
    return ChoiceString(std::move(bits));
}

Decoded decode(const ChoiceString& bits, const Rtg& grammar, std::size_t start, std::size_t node_budget) {
    BitReader reader(bits);
    std::vector<ProductionRef> order;
    std::vector<std::size_t> pending{start};
    while (!pending.empty()) {
        const std::size_t a = pending.back();
        pending.pop_back();
        if (order.size() >= node_budget) {
            throw DecodeBudgetExceeded("depth exceeded: decoding generated more than " + std::to_string(node_budget) +
                                       " nodes");
        }
        const auto prods = grammar.productions(a);
        const std::size_t j = read_production(reader, prods.size());
        const Production& p = prods[j - 1];
        order.push_back(p.ref());
        for (auto it = p.rhs.rbegin(); it != p.rhs.rend(); ++it) {
            pending.push_back(*it);
        }
    }
    // Reverse pre-order: each node finds its children on top of the stack, first child topmost.
    std::vector<TermPtr> built;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Production& p = grammar.production(*it);
        std::vector<TermPtr> children;
        children.reserve(p.rhs.size());
        for (std::size_t i = 0; i < p.rhs.size(); ++i) {
            children.push_back(std::move(built.back()));
            built.pop_back();
        }
        built.push_back(std::make_shared<const Term>(p.symbol, std::move(children), *it));
    }
    return {std::move(built.back()), reader.consumed()};
}

namespace {

class Enumerator {
  public:
    Enumerator(const Rtg& g, std::size_t max_nodes) : g_(g) {
        table_.assign(g.nonterminals().size(), std::vector<std::vector<TermPtr>>(max_nodes + 1));
    }

    // Fills every table entry of the given size; smaller sizes are complete.
    void fill(std::size_t size) {
        for (std::size_t a = 0; a < g_.nonterminals().size(); ++a) {
            auto& out = table_[a][size];
            for (const auto& p : g_.productions(a)) {
                if (p.rhs.empty()) {
                    if (size == 1) {
                        out.push_back(std::make_shared<const Term>(p.symbol, std::vector<TermPtr>{}, p.ref()));
                    }
                    continue;
                }
                if (size < 1 + p.rhs.size()) {
                    continue;
                }
                std::vector<TermPtr> children;
                combine(p, 0, size - 1, children, out);
            }
        }
    }

    const std::vector<TermPtr>& at(std::size_t nt, std::size_t size) const { return table_[nt][size]; }

  private:
    void combine(const Production& p, std::size_t arg, std::size_t remaining, std::vector<TermPtr>& children,
                 std::vector<TermPtr>& out) {
        const std::size_t left = p.rhs.size() - arg - 1;
        if (left == 0) {
            for (const auto& c : table_[p.rhs[arg]][remaining]) {
                children.push_back(c);
                out.push_back(std::make_shared<const Term>(p.symbol, children, p.ref()));
                children.pop_back();
            }
            return;
        }
        for (std::size_t s = 1; s + left <= remaining; ++s) {
            for (const auto& c : table_[p.rhs[arg]][s]) {
                children.push_back(c);
                combine(p, arg + 1, remaining - s, children, out);
                children.pop_back();
            }
        }
    }

    const Rtg& g_;
    std::vector<std::vector<std::vector<TermPtr>>> table_;
};

} // namespace

void for_each_term(const Rtg& grammar, std::size_t nonterminal, std::size_t max_nodes,
                   const std::function<bool(const TermPtr&)>& visit) {
    Enumerator e(grammar, max_nodes);
    for (std::size_t size = 1; size <= max_nodes; ++size) {
        e.fill(size);
        for (const auto& t : e.at(nonterminal, size)) {
            if (!visit(t)) {
                return;
            }
        }
    }
}

std::vector<TermPtr> enumerate_terms(const Rtg& grammar, std::size_t nonterminal, std::size_t max_nodes) {
    std::vector<TermPtr> out;
    for_each_term(grammar, nonterminal, max_nodes, [&](const TermPtr& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

} // namespace unreal
