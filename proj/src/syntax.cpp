#include "proofgraph/syntax.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace proofgraph {

namespace {

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::RParen, ")", i++});
    } else if (c == ';') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      std::size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             text[i] != '(' && text[i] != ')' && text[i] != ';')
        ++i;
      out.push_back({Token::Symbol, text.substr(start, i - start), start});
    }
  }
  out.push_back({Token::End, "", text.size()});
  return out;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) {
  throw Error(ErrorCode::ParseError,
              msg + " at offset " + std::to_string(t.pos) +
                  (t.text.empty() ? "" : " near '" + t.text + "'"));
}

class Parser {
 public:
  Parser(Kernel& k, std::vector<Token> toks, std::vector<std::string> binders)
      : k_(k), toks_(std::move(toks)), names_(std::move(binders)) {}

  NodeId run() {
    NodeId t = term();
    if (peek().kind != Token::End) fail(peek(), "trailing input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_++]; }

  Token expect_symbol(const char* what) {
    Token t = next();
    if (t.kind != Token::Symbol) fail(t, std::string("expected ") + what);
    return t;
  }

  void expect_rparen() {
    Token t = next();
    if (t.kind != Token::RParen) fail(t, "expected ')'");
  }

  NodeId term() {
    Token t = next();
    if (t.kind == Token::Symbol) return atom_term(t);
    if (t.kind == Token::LParen) return form();
    fail(t, "expected a term");
  }

  NodeId atom_term(const Token& t) {
    const std::string& s = t.text;
    if (s == "Type") return k_.sort();
    if (s == "Nat") return k_.nat();
    if (s == "zero") return k_.zero();
    if (std::isdigit(static_cast<unsigned char>(s[0]))) {
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        fail(t, "bad numeral");
      return k_.numeral(v);
    }
    if (s[0] == '?') {
      std::uint32_t v = 0;
      auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        fail(t, "bad free-variable reference");
      return k_.var(static_cast<std::uint32_t>(names_.size()) + v);
    }
    // innermost binder wins
    for (std::size_t d = names_.size(); d-- > 0;)
      if (names_[d] == s)
        return k_.var(static_cast<std::uint32_t>(names_.size() - 1 - d));
    if (auto ref = k_.graph().definition(s)) return *ref;
    fail(t, "unbound identifier");
  }

  // (pi x A B) | (sigma x A B)
  NodeId binder_form(const std::string& head) {
    Token name = expect_symbol("binder name");
    NodeId dom = term();
    names_.emplace_back(name.text);
    NodeId cod = term();
    names_.pop_back();
    expect_rparen();
    return head == "pi" ? k_.pi(dom, cod) : k_.sigma(dom, cod);
  }

  // (lam x body) | (lam x A body)
  NodeId lam_form() {
    Token name = expect_symbol("binder name");
    std::size_t save = i_;
    // Try the 3-arg form: domain parsed out of binder scope.
    NodeId dom;
    bool explicit_dom = true;
    try {
      dom = term();
    } catch (const Error&) {
      explicit_dom = false;
      i_ = save;
    }
    if (explicit_dom && peek().kind == Token::RParen) {
      // Only two operands: what we parsed was the body (domain Nat).
      explicit_dom = false;
      i_ = save;
    }
    if (!explicit_dom) dom = k_.nat();
    names_.emplace_back(name.text);
    NodeId body = term();
    names_.pop_back();
    expect_rparen();
    return k_.lambda(dom, body);
  }

  NodeId form() {
    Token head = next();
    if (head.kind == Token::LParen) {
      // head is itself a compound term: application spine
      --i_;
      NodeId f = term();
      return spine(f);
    }
    if (head.kind != Token::Symbol) fail(head, "expected a form head");
    const std::string& s = head.text;
    if (s == "succ") return unary([&](NodeId a) { return k_.succ(a); });
    if (s == "refl") return unary([&](NodeId a) { return k_.refl(a); });
    if (s == "cong") return unary([&](NodeId a) { return k_.cong(a); });
    if (s == "proj1") return unary([&](NodeId a) { return k_.proj1(a); });
    if (s == "proj2") return unary([&](NodeId a) { return k_.proj2(a); });
    if (s == "not") return unary([&](NodeId a) { return k_.prop_not(a); });
    if (s == "pair") return binary([&](NodeId a, NodeId b) { return k_.pair(a, b); });
    if (s == "and") return binary([&](NodeId a, NodeId b) { return k_.prop_and(a, b); });
    if (s == "implies")
      return binary([&](NodeId a, NodeId b) { return k_.prop_implies(a, b); });
    if (s == "lam") return lam_form();
    if (s == "pi" || s == "sigma") return binder_form(s);
    if (s == "id") {
      NodeId ty = term(), a = term(), b = term();
      expect_rparen();
      return k_.id_form(ty, a, b);
    }
    if (s == "rec") {
      NodeId m = term(), z = term(), st = term(), t = term();
      expect_rparen();
      return k_.rec(m, z, st, t);
    }
    if (s == "atom") {
      Token name = expect_symbol("atom name");
      expect_rparen();
      return k_.atom(name.text);
    }
    if (s == "app") {
      NodeId f = term();
      return spine(f);
    }
    // application with a symbol head
    NodeId f = atom_term(head);
    return spine(f);
  }

  NodeId spine(NodeId f) {
    if (peek().kind == Token::RParen) fail(peek(), "application needs an argument");
    while (peek().kind != Token::RParen) f = k_.app(f, term());
    expect_rparen();
    return f;
  }

  template <typename F>
  NodeId unary(F build) {
    NodeId a = term();
    expect_rparen();
    return build(a);
  }

  template <typename F>
  NodeId binary(F build) {
    NodeId a = term(), b = term();
    expect_rparen();
    return build(a, b);
  }

  Kernel& k_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::vector<std::string> names_;
};

void print_rec(const Hypergraph& g, NodeId id, std::size_t depth,
               std::ostringstream& out);

void print_spine(const Hypergraph& g, NodeId id, std::size_t depth,
                 std::ostringstream& out) {
  const Node& n = g.node(id);
  if (n.kind == NodeKind::App) {
    print_spine(g, n.children[0], depth, out);
    out << ' ';
    print_rec(g, n.children[1], depth, out);
  } else {
    print_rec(g, id, depth, out);
  }
}

void print_rec(const Hypergraph& g, NodeId id, std::size_t depth,
               std::ostringstream& out) {
  const Node n = g.node(id);
  auto kid = [&](int i) { return n.children[static_cast<std::size_t>(i)]; };
  switch (n.kind) {
    case NodeKind::Sort:
      out << std::get<std::string>(n.payload);
      return;
    case NodeKind::NatZero:
      out << "zero";
      return;
    case NodeKind::NatSucc:
      out << "(succ ";
      print_rec(g, kid(0), depth, out);
      out << ')';
      return;
    case NodeKind::Var: {
      auto i = std::get<std::uint32_t>(n.payload);
      if (i < depth)
        out << 'x' << (depth - 1 - i);
      else
        out << '?' << (i - depth);
      return;
    }
    case NodeKind::Lambda:
      out << "(lam x" << depth << ' ';
      print_rec(g, kid(0), depth, out);
      out << ' ';
      print_rec(g, kid(1), depth + 1, out);
      out << ')';
      return;
    case NodeKind::PiForm:
    case NodeKind::SigmaForm:
      out << (n.kind == NodeKind::PiForm ? "(pi x" : "(sigma x") << depth
          << ' ';
      print_rec(g, kid(0), depth, out);
      out << ' ';
      print_rec(g, kid(1), depth + 1, out);
      out << ')';
      return;
    case NodeKind::App:
      out << '(';
      print_spine(g, id, depth, out);
      out << ')';
      return;
    case NodeKind::Pair:
    case NodeKind::PropAnd:
    case NodeKind::PropImplies:
    case NodeKind::IdForm:
    case NodeKind::Rec: {
      static const char* names[] = {"pair", "and", "implies", "id", "rec"};
      int which = n.kind == NodeKind::Pair          ? 0
                  : n.kind == NodeKind::PropAnd     ? 1
                  : n.kind == NodeKind::PropImplies ? 2
                  : n.kind == NodeKind::IdForm      ? 3
                                                    : 4;
      out << '(' << names[which];
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        out << ' ';
        print_rec(g, n.children[i], depth, out);
      }
      out << ')';
      return;
    }
    case NodeKind::Proj1:
    case NodeKind::Proj2:
    case NodeKind::Refl:
    case NodeKind::Cong:
    case NodeKind::PropNot: {
      const char* name = n.kind == NodeKind::Proj1   ? "proj1"
                         : n.kind == NodeKind::Proj2 ? "proj2"
                         : n.kind == NodeKind::Refl  ? "refl"
                         : n.kind == NodeKind::Cong  ? "cong"
                                                     : "not";
      out << '(' << name << ' ';
      print_rec(g, kid(0), depth, out);
      out << ')';
      return;
    }
    case NodeKind::DefRef:
      out << std::get<std::string>(n.payload);
      return;
    case NodeKind::Atom:
      out << "(atom " << std::get<std::string>(n.payload) << ')';
      return;
  }
  throw Error(ErrorCode::Internal, "unprintable node kind");
}

}  // namespace

NodeId parse_term(Kernel& k, const std::string& text,
                  const std::vector<std::string>& binders) {
  Parser p(k, tokenize(text), binders);
  return p.run();
}

std::string print_term(const Hypergraph& g, NodeId term, std::size_t depth) {
  std::ostringstream out;
  print_rec(g, term, depth, out);
  return out.str();
}

int token_count(const std::string& text) {
  int count = 0;
  for (const Token& t : tokenize(text))
    if (t.kind == Token::Symbol) ++count;
  return count;
}

}  // namespace proofgraph
