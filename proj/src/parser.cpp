#include "modelglass/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "modelglass/error.hpp"

namespace modelglass {

namespace {

enum class Tok { Ident, Op, LParen, RParen, Comma, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text, const Signature& sig) {
  std::vector<std::string> ops = {"!", "&", "|", "->", "<->"};
  for (auto& s : sig.symbolic_names()) ops.push_back(s);
  std::sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::vector<Token> out;
  std::size_t line = 1, column = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    std::size_t l = line, col = column;
    if (is_ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", l, col});
        advance(1);
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", l, col});
        advance(1);
        continue;
      case ',':
        out.push_back({Tok::Comma, ",", l, col});
        advance(1);
        continue;
      case '.':
        out.push_back({Tok::Dot, ".", l, col});
        advance(1);
        continue;
      default:
        break;
    }
    bool matched = false;
    for (const auto& op : ops) {
      if (text.substr(i, op.size()) == op) {
        out.push_back({Tok::Op, op, l, col});
        advance(op.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", l, col);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

bool is_multiplicative(const std::string& name) { return name == "*" || name == "/" || name == "%"; }

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig, std::vector<ParseWarning>* warnings)
      : toks_(std::move(tokens)), sig_(sig), warnings_(warnings) {}

  Formula parse_whole_formula() {
    Formula f = formula();
    expect_end();
    return f;
  }

  Term parse_whole_term() {
    Term t = term();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), "expected " + what + describe(peek()));
    ++pos_;
  }

  void expect_end() {
    if (peek().kind == Tok::RParen) fail(peek(), "unbalanced ')'");
    if (peek().kind != Tok::End) fail(peek(), "unexpected" + describe(peek()));
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return ", found end of input";
    return ", found '" + t.text + "'";
  }

  bool at_op(const char* op) const { return peek().kind == Tok::Op && peek().text == op; }

  bool at_keyword(const char* kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  // iff := imp ('<->' imp)*
  Formula formula() {
    Formula lhs = implication();
    while (at_op("<->")) {
      ++pos_;
      lhs = Formula::iff(lhs, implication());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (at_op("->")) {
      ++pos_;
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (at_op("|")) {
      ++pos_;
      lhs = Formula::disj(lhs, conjunction());
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    while (at_op("&")) {
      ++pos_;
      lhs = Formula::conj(lhs, unary());
    }
    return lhs;
  }

  Formula unary() {
    if (at_op("!")) {
      ++pos_;
      return Formula::negation(unary());
    }
    if (at_keyword("forall") || at_keyword("exists")) {
      Connective q = peek().text == "forall" ? Connective::ForAll : Connective::Exists;
      ++pos_;
      const Token& var = peek();
      if (var.kind != Tok::Ident || !is_variable_name(var.text) || sig_.declares(var.text) ||
          var.text == "forall" || var.text == "exists") {
        fail(var, "expected a variable after quantifier" + describe(var));
      }
      ++pos_;
      expect(Tok::Dot, "'.' after quantified variable");
      if (std::find(bound_.begin(), bound_.end(), var.text) != bound_.end() && warnings_ != nullptr) {
        warnings_->push_back({"variable '" + var.text + "' shadows an enclosing binder", var.line, var.column});
      }
      bound_.push_back(var.text);
      Formula body = formula();
      bound_.pop_back();
      return Formula::quantified(q, var.text, body);
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (auto rel = sig_.find_relation(t.text); rel && sig_.relations()[*rel].fixity == Fixity::Prefix) {
        return prefix_atom(*rel);
      }
    }
    if (t.kind == Tok::LParen) {
      // Either a parenthesized formula or an atom whose left term starts with '('.
      std::size_t save = pos_;
      try {
        return infix_atom();
      } catch (const ParseError&) {
        pos_ = save;
      }
      ++pos_;
      Formula inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return infix_atom();
  }

  Formula prefix_atom(std::size_t rel) {
    const auto& decl = sig_.relations()[rel];
    const Token& name = next();
    expect(Tok::LParen, "'(' after relation '" + decl.name + "'");
    std::vector<Term> args = term_list();
    if (args.size() != decl.arity) {
      fail(name, "arity mismatch: relation '" + decl.name + "' expects " + std::to_string(decl.arity) +
                     " arguments, got " + std::to_string(args.size()));
    }
    return Formula::atomic(decl.name, std::move(args), false);
  }

  Formula infix_atom() {
    Term lhs = term();
    const Token& op = peek();
    if (op.kind != Tok::Op) fail(op, "expected a relation symbol" + describe(op));
    auto rel = sig_.find_relation(op.text);
    if (!rel) {
      if (sig_.find_function(op.text)) fail(op, "expected a relation symbol, found function '" + op.text + "'");
      fail(op, "expected a relation symbol" + describe(op));
    }
    if (sig_.relations()[*rel].fixity != Fixity::Infix) fail(op, "relation '" + op.text + "' is not infix");
    ++pos_;
    Term rhs = term();
    return Formula::atomic(op.text, {lhs, rhs}, true);
  }

  std::vector<Term> term_list() {
    std::vector<Term> args;
    if (peek().kind == Tok::RParen) fail(peek(), "empty argument list");
    args.push_back(term());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  std::optional<std::size_t> infix_function_here(bool multiplicative) const {
    const Token& t = peek();
    if (t.kind != Tok::Op) return std::nullopt;
    auto fn = sig_.find_function(t.text);
    if (!fn || sig_.functions()[*fn].fixity != Fixity::Infix) return std::nullopt;
    if (is_multiplicative(t.text) != multiplicative) return std::nullopt;
    return fn;
  }

  Term term() {
    Term lhs = product();
    while (auto fn = infix_function_here(false)) {
      ++pos_;
      lhs = Term::apply(sig_.functions()[*fn].name, {lhs, product()}, true);
    }
    return lhs;
  }

  Term product() {
    Term lhs = atom_term();
    while (auto fn = infix_function_here(true)) {
      ++pos_;
      lhs = Term::apply(sig_.functions()[*fn].name, {lhs, atom_term()}, true);
    }
    return lhs;
  }

  Term atom_term() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident) fail(t, "expected a term" + describe(t));
    ++pos_;
    if (sig_.find_constant(t.text)) return Term::constant(t.text);
    if (auto fn = sig_.find_function(t.text)) {
      const auto& decl = sig_.functions()[*fn];
      if (decl.fixity == Fixity::Infix) fail(t, "function '" + t.text + "' is infix");
      expect(Tok::LParen, "'(' after function name");
      std::vector<Term> args = term_list();
      if (args.size() != decl.arity) {
        fail(t, "arity mismatch: function '" + decl.name + "' expects " + std::to_string(decl.arity) +
                    " arguments, got " + std::to_string(args.size()));
      }
      return Term::apply(decl.name, std::move(args), false);
    }
    if (sig_.find_relation(t.text)) fail(t, "relation '" + t.text + "' used as a term");
    if (t.text == "forall" || t.text == "exists") fail(t, "quantifier '" + t.text + "' used as a term");
    if (!is_variable_name(t.text)) fail(t, "unknown symbol '" + t.text + "'");
    return Term::variable(t.text);
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  std::vector<ParseWarning>* warnings_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig, std::vector<ParseWarning>* warnings) {
  Parser p(lex(text, sig), sig, warnings);
  return p.parse_whole_formula();
}

Term parse_term(std::string_view text, const Signature& sig) {
  Parser p(lex(text, sig), sig, nullptr);
  return p.parse_whole_term();
}

}  // namespace modelglass
