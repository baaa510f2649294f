#pragma once

#include <string>
#include <vector>

#include "proofgraph/kernel.hpp"

namespace proofgraph {

// S-expression surface syntax (see docs/formats.md):
//   term := Type | Nat | zero | <digits> | <ident> | ?<n> | (form ...)
//   form := succ t | lam x body | lam x A body | pi x A B | sigma x A B
//         | pair a b | proj1 t | proj2 t | id A a b | refl t | cong t
//         | rec motive base step target | and a b | implies a b | not a
//         | atom NAME | app f a... | f a...        (application spine)
// Decimal numerals parse to succ-towers; the two-argument lam defaults the
// domain to Nat. Identifiers resolve to enclosing binders, then to named
// definitions. ?n is the n-th free variable beyond the current binders.
NodeId parse_term(Kernel& k, const std::string& text,
                  const std::vector<std::string>& binders = {});

// Canonical printing: binders are named x0, x1, ... by depth, lambdas print
// with explicit domains, DefRefs print as their bare name, application
// spines are flattened. parse(print(t)) == t for closed terms.
std::string print_term(const Hypergraph& g, NodeId term,
                       std::size_t depth = 0);

// Token count of a serialization; parentheses are free.
int token_count(const std::string& text);

}  // namespace proofgraph
