#include "autostruct/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

enum class Tok {
  ident,
  number,
  string,
  lparen,
  rparen,
  comma,
  dot,
  equals,
  tilde,
  amp,
  bar,
  arrow,
  iff,
  lbracket,
  rbracket,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
                                src[j] == '\''))
        ++j;
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      const std::size_t close = src.find('"', i + 1);
      if (close == std::string_view::npos) throw SyntaxError("unterminated string constant", l, cl);
      out.push_back({Tok::string, std::string(src.substr(i + 1, close - i - 1)), l, cl});
      advance(close - i + 1);
      continue;
    }
    if (src.substr(i, 3) == "<->") {
      out.push_back({Tok::iff, "<->", l, cl});
      advance(3);
      continue;
    }
    if (src.substr(i, 2) == "->") {
      out.push_back({Tok::arrow, "->", l, cl});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      case '.': k = Tok::dot; break;
      case '=': k = Tok::equals; break;
      case '~': k = Tok::tilde; break;
      case '&': k = Tok::amp; break;
      case '|': k = Tok::bar; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({k, std::string(1, c), l, cl});
    advance(1);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

const char* describe(Tok k) {
  switch (k) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::string: return "string constant";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::equals: return "'='";
    case Tok::tilde: return "'~'";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::arrow: return "'->'";
    case Tok::iff: return "'<->'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::end: return "end of input";
  }
  return "token";
}

std::shared_ptr<Formula> node(Formula::Kind kind, const Token& at) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->line = at.line;
  f->column = at.column;
  return f;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  FormulaPtr parse() {
    auto f = iff();
    if (peek().kind != Tok::end) error("expected end of formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void error(const std::string& msg) const {
    const auto& t = peek();
    throw SyntaxError(msg + ", found " + (t.kind == Tok::end ? describe(t.kind) : "'" + t.text + "'"),
                      t.line, t.column);
  }

  const Token& expect(Tok k) {
    if (peek().kind != k) error(std::string("expected ") + describe(k));
    return take();
  }

  using Level = FormulaPtr (Parser::*)();

  FormulaPtr binary(Level next, Tok op, Formula::Kind kind) {
    auto lhs = (this->*next)();
    while (peek().kind == op) {
      const Token& t = take();
      auto n = node(kind, t);
      n->left = lhs;
      n->right = (this->*next)();
      lhs = n;
    }
    return lhs;
  }

  FormulaPtr iff() { return binary(&Parser::impl, Tok::iff, Formula::Kind::equivalence); }
  FormulaPtr impl() { return binary(&Parser::disj, Tok::arrow, Formula::Kind::implication); }
  FormulaPtr disj() { return binary(&Parser::conj, Tok::bar, Formula::Kind::disjunction); }
  FormulaPtr conj() { return binary(&Parser::unary, Tok::amp, Formula::Kind::conjunction); }

  FormulaPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::tilde) {
      take();
      auto n = node(Formula::Kind::negation, t);
      n->left = unary();
      return n;
    }
    if (t.kind == Tok::lparen) {
      take();
      auto f = iff();
      expect(Tok::rparen);
      return f;
    }
    if (t.kind == Tok::ident && peek(1).kind == Tok::ident) return quantifier();
    if (t.kind == Tok::ident && t.text == "E" && peek(1).kind == Tok::lbracket) return quantifier();
    return atom();
  }

  std::uint32_t number() {
    const Token& t = expect(Tok::number);
    try {
      return static_cast<std::uint32_t>(std::stoul(t.text));
    } catch (const std::exception&) {
      throw SyntaxError("number too large", t.line, t.column);
    }
  }

  FormulaPtr quantifier() {
    const Token& q = take();
    std::shared_ptr<Formula> n;
    if (q.text == "A") {
      n = node(Formula::Kind::forall, q);
    } else if (q.text == "EI") {
      n = node(Formula::Kind::exists_infinitely, q);
    } else if (q.text == "E" && peek().kind == Tok::lbracket) {
      take();
      n = node(Formula::Kind::exists_mod, q);
      n->modulus = number();
      expect(Tok::comma);
      const Token& mt = peek();
      n->residue = number();
      expect(Tok::rbracket);
      if (n->modulus == 0) throw SyntaxError("counting quantifier modulus must be positive", mt.line, mt.column);
      if (n->residue >= n->modulus)
        throw SyntaxError("counting quantifier needs m < n in E[n,m]", mt.line, mt.column);
    } else if (q.text == "E") {
      n = node(Formula::Kind::exists, q);
    } else {
      throw SyntaxError("unknown quantifier '" + q.text + "'", q.line, q.column);
    }
    n->name = expect(Tok::ident).text;
    expect(Tok::dot);
    n->left = unary();
    return n;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::ident) return {Term::Kind::variable, take().text};
    if (t.kind == Tok::string) return {Term::Kind::constant, take().text};
    error("expected a variable or a quoted constant");
  }

  FormulaPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::ident && peek(1).kind == Tok::lparen) {
      take();
      auto n = node(Formula::Kind::atom, t);
      n->name = t.text;
      take();
      n->terms.push_back(term());
      while (peek().kind == Tok::comma) {
        take();
        n->terms.push_back(term());
      }
      expect(Tok::rparen);
      return n;
    }
    if (t.kind != Tok::ident && t.kind != Tok::string) error("expected a formula");
    auto n = node(Formula::Kind::equal, t);
    n->terms.push_back(term());
    expect(Tok::equals);
    n->terms.push_back(term());
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void collect_names(const Formula& f, std::set<std::string>& out) {
  if (f.is_quantifier()) out.insert(f.name);
  for (const auto& t : f.terms)
    if (t.is_variable()) out.insert(t.text);
  if (f.left) collect_names(*f.left, out);
  if (f.right) collect_names(*f.right, out);
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& t : f.terms)
    if (t.is_variable()) note(t.text);
  if (f.is_quantifier()) {
    bound.push_back(f.name);
    collect_free(*f.left, bound, out);
    bound.pop_back();
    return;
  }
  if (f.left) collect_free(*f.left, bound, out);
  if (f.right) collect_free(*f.right, bound, out);
}

class Renamer {
 public:
  explicit Renamer(const Formula& root) {
    collect_names(root, used_);
    auto fv = free_variables(root);
    free_.insert(fv.begin(), fv.end());
  }

  FormulaPtr run(const FormulaPtr& f) { return visit(f); }

 private:
  FormulaPtr visit(const FormulaPtr& f) {
    auto out = std::make_shared<Formula>(*f);
    for (auto& t : out->terms)
      if (t.is_variable()) {
        auto it = scope_.find(t.text);
        if (it != scope_.end() && !it->second.empty()) t.text = it->second.back();
      }
    if (f->is_quantifier()) {
      const std::string original = f->name;
      auto& stack = scope_[original];
      std::string fresh = original;
      if (!stack.empty() || free_.count(original)) {
        for (int i = 1;; ++i) {
          fresh = original + "_" + std::to_string(i);
          if (!used_.count(fresh)) break;
        }
        used_.insert(fresh);
      }
      stack.push_back(fresh);
      out->name = fresh;
      out->left = visit(f->left);
      scope_[original].pop_back();
      return out;
    }
    if (f->left) out->left = visit(f->left);
    if (f->right) out->right = visit(f->right);
    return out;
  }

  std::set<std::string> used_, free_;
  std::map<std::string, std::vector<std::string>> scope_;
};

std::string term_text(const Term& t) { return t.is_variable() ? t.text : "\"" + t.text + "\""; }

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Parser p(lex(text));
  auto f = p.parse();
  return Renamer(*f).run(f);
}

std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::atom: {
      std::string s = f.name + "(";
      for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? ", " : "") + term_text(f.terms[i]);
      return s + ")";
    }
    case K::equal:
      return term_text(f.terms[0]) + " = " + term_text(f.terms[1]);
    case K::negation:
      return "~" + to_string(*f.left);
    case K::conjunction:
      return "(" + to_string(*f.left) + " & " + to_string(*f.right) + ")";
    case K::disjunction:
      return "(" + to_string(*f.left) + " | " + to_string(*f.right) + ")";
    case K::implication:
      return "(" + to_string(*f.left) + " -> " + to_string(*f.right) + ")";
    case K::equivalence:
      return "(" + to_string(*f.left) + " <-> " + to_string(*f.right) + ")";
    case K::exists:
      return "(E " + f.name + ". " + to_string(*f.left) + ")";
    case K::forall:
      return "(A " + f.name + ". " + to_string(*f.left) + ")";
    case K::exists_infinitely:
      return "(EI " + f.name + ". " + to_string(*f.left) + ")";
    case K::exists_mod:
      return "(E[" + std::to_string(f.modulus) + "," + std::to_string(f.residue) + "] " + f.name +
             ". " + to_string(*f.left) + ")";
  }
  return {};
}

namespace fo {

namespace {

std::shared_ptr<Formula> make(Formula::Kind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

FormulaPtr binary(Formula::Kind kind, FormulaPtr a, FormulaPtr b) {
  auto f = make(kind);
  f->left = std::move(a);
  f->right = std::move(b);
  return f;
}

FormulaPtr quant(Formula::Kind kind, std::string x, FormulaPtr body) {
  auto f = make(kind);
  f->name = std::move(x);
  f->left = std::move(body);
  return f;
}

}  // namespace

FormulaPtr atom(std::string relation, std::vector<std::string> variables) {
  auto f = make(Formula::Kind::atom);
  f->name = std::move(relation);
  for (auto& v : variables) f->terms.push_back({Term::Kind::variable, std::move(v)});
  return f;
}

FormulaPtr equal(std::string x, std::string y) {
  auto f = make(Formula::Kind::equal);
  f->terms = {{Term::Kind::variable, std::move(x)}, {Term::Kind::variable, std::move(y)}};
  return f;
}

FormulaPtr negation(FormulaPtr a) {
  auto f = make(Formula::Kind::negation);
  f->left = std::move(a);
  return f;
}

FormulaPtr conjunction(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::conjunction, a, b); }
FormulaPtr disjunction(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::disjunction, a, b); }
FormulaPtr implication(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::implication, a, b); }
FormulaPtr equivalence(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::equivalence, a, b); }
FormulaPtr exists(std::string x, FormulaPtr body) { return quant(Formula::Kind::exists, x, body); }
FormulaPtr forall(std::string x, FormulaPtr body) { return quant(Formula::Kind::forall, x, body); }
FormulaPtr exists_infinitely(std::string x, FormulaPtr body) {
  return quant(Formula::Kind::exists_infinitely, x, body);
}
FormulaPtr exists_mod(std::uint32_t n, std::uint32_t m, std::string x, FormulaPtr body) {
  if (n == 0 || m >= n) throw InvalidArgument("counting quantifier needs 0 <= m < n");
  auto f = make(Formula::Kind::exists_mod);
  f->modulus = n;
  f->residue = m;
  f->name = std::move(x);
  f->left = std::move(body);
  return f;
}

}  // namespace fo

}  // namespace autostruct
