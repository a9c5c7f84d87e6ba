#include "modelglass/signature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "modelglass/error.hpp"

namespace modelglass {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Characters that the formula lexer treats as structure; they may not appear
// inside symbolic names.
bool is_reserved_char(char c) {
  return c == '(' || c == ')' || c == ',' || c == '.' || c == ';' || c == '#' ||
         std::isspace(static_cast<unsigned char>(c));
}

const char* kReservedOperators[] = {"!", "&", "|", "->", "<->"};

}  // namespace

bool is_identifier_name(std::string_view name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), is_ident_char);
}

bool is_variable_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
  });
}

Signature::Signature() { relations_.push_back({std::string(kEquality), 2, Fixity::Infix}); }

void Signature::check_new_name(const std::string& name, std::size_t arity, Fixity fixity) const {
  if (name.empty()) throw Error("empty symbol name");
  if (name == kEquality) throw Error("the equality symbol '=' cannot be redeclared");
  if (declares(name)) throw Error("duplicate symbol name '" + name + "'");
  if (fixity == Fixity::Infix && arity != 2) {
    throw Error("infix symbol '" + name + "' must have arity 2");
  }
  if (name == "forall" || name == "exists") throw Error("'" + name + "' is a reserved word");
  if (!is_identifier_name(name)) {
    if (std::any_of(name.begin(), name.end(), is_reserved_char)) {
      throw Error("symbol name '" + name + "' contains a reserved character");
    }
    for (const char* op : kReservedOperators) {
      if (name == op) throw Error("symbol name '" + name + "' is a logical connective");
    }
    if (fixity != Fixity::Infix) {
      throw Error("symbolic name '" + name + "' must be declared infix");
    }
  }
}

void Signature::add_relation(std::string name, std::size_t arity, Fixity fixity) {
  if (arity == 0) throw Error("relation '" + name + "' must have arity >= 1");
  check_new_name(name, arity, fixity);
  relations_.push_back({std::move(name), arity, fixity});
}

void Signature::add_function(std::string name, std::size_t arity, Fixity fixity) {
  if (arity == 0) throw Error("function '" + name + "' must have arity >= 1");
  check_new_name(name, arity, fixity);
  functions_.push_back({std::move(name), arity, fixity});
}

void Signature::add_constant(std::string name) {
  check_new_name(name, 0, Fixity::Prefix);
  if (!is_identifier_name(name)) throw Error("constant '" + name + "' must be an identifier");
  constants_.push_back(std::move(name));
}

namespace {
template <typename Range, typename Proj>
std::optional<std::size_t> find_by_name(const Range& r, std::string_view name, Proj proj) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (proj(r[i]) == name) return i;
  }
  return std::nullopt;
}
}  // namespace

std::optional<std::size_t> Signature::find_relation(std::string_view name) const {
  return find_by_name(relations_, name, [](const SymbolDecl& d) -> const std::string& { return d.name; });
}

std::optional<std::size_t> Signature::find_function(std::string_view name) const {
  return find_by_name(functions_, name, [](const SymbolDecl& d) -> const std::string& { return d.name; });
}

std::optional<std::size_t> Signature::find_constant(std::string_view name) const {
  return find_by_name(constants_, name, [](const std::string& s) -> const std::string& { return s; });
}

bool Signature::declares(std::string_view name) const {
  return find_relation(name) || find_function(name) || find_constant(name);
}

std::vector<std::string> Signature::symbolic_names() const {
  std::vector<std::string> out;
  for (const auto& r : relations_) {
    if (!is_identifier_name(r.name)) out.push_back(r.name);
  }
  for (const auto& f : functions_) {
    if (!is_identifier_name(f.name)) out.push_back(f.name);
  }
  return out;
}

std::string Signature::to_text() const {
  std::string out;
  auto emit = [&](const char* kw, const SymbolDecl& d) {
    if (!out.empty()) out += "; ";
    out += kw;
    out += ' ' + d.name + " /" + std::to_string(d.arity);
    if (d.fixity == Fixity::Infix) out += " infix";
  };
  for (std::size_t i = 1; i < relations_.size(); ++i) emit("rel", relations_[i]);
  for (const auto& f : functions_) emit("fun", f);
  for (const auto& c : constants_) {
    if (!out.empty()) out += "; ";
    out += "const " + c;
  }
  return out;
}

namespace {

struct Word {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Splits one statement into whitespace separated words, remembering positions.
std::vector<std::vector<Word>> split_statements(std::string_view text) {
  std::vector<std::vector<Word>> statements(1);
  std::size_t line = 1, column = 1;
  Word current{"", 0, 0};
  auto flush = [&] {
    if (!current.text.empty()) statements.back().push_back(current);
    current = Word{"", 0, 0};
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') {
      flush();
      while (i + 1 < text.size() && text[i + 1] != '\n') {
        ++i;
      }
      ++column;
      continue;
    }
    if (c == ';') {
      flush();
      statements.emplace_back();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      if (current.text.empty()) {
        current.line = line;
        current.column = column;
      }
      current.text += c;
    }
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  flush();
  return statements;
}

std::size_t parse_arity(const Word& w, std::string_view digits) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("malformed arity '" + w.text + "'", w.line, w.column);
  }
  return value;
}

}  // namespace

Signature parse_signature(std::string_view text) {
  Signature sig;
  for (const auto& words : split_statements(text)) {
    if (words.empty()) continue;
    const Word& kw = words[0];
    auto fail = [](const Word& w, const std::string& msg) -> ParseError {
      return ParseError(msg, w.line, w.column);
    };
    if (kw.text == "const") {
      if (words.size() != 2) throw fail(kw, "expected 'const NAME'");
      try {
        sig.add_constant(words[1].text);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw fail(words[1], e.what());
      }
      continue;
    }
    if (kw.text != "rel" && kw.text != "fun") {
      throw fail(kw, "expected 'rel', 'fun' or 'const', found '" + kw.text + "'");
    }
    if (words.size() < 3) throw fail(kw, "expected '" + kw.text + " NAME /ARITY [infix]'");
    const Word& name = words[1];
    std::size_t pos = 2;
    std::size_t arity = 0;
    const Word& slash = words[pos];
    if (slash.text.front() != '/') throw fail(slash, "expected '/ARITY'");
    if (slash.text.size() > 1) {
      arity = parse_arity(slash, std::string_view(slash.text).substr(1));
      ++pos;
    } else {
      if (words.size() < 4) throw fail(slash, "missing arity");
      arity = parse_arity(words[3], words[3].text);
      pos = 4;
    }
    Fixity fixity = Fixity::Prefix;
    if (pos < words.size()) {
      if (words[pos].text != "infix") throw fail(words[pos], "expected 'infix' or ';'");
      fixity = Fixity::Infix;
      ++pos;
    }
    if (pos != words.size()) throw fail(words[pos], "unexpected '" + words[pos].text + "'");
    try {
      if (kw.text == "rel") {
        sig.add_relation(name.text, arity, fixity);
      } else {
        sig.add_function(name.text, arity, fixity);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw fail(name, e.what());
    }
  }
  return sig;
}

Signature graph_signature() { return parse_signature("rel E /2"); }

Signature order_signature() { return parse_signature("rel < /2 infix"); }

Signature ring_signature(bool with_minus) {
  Signature sig;
  sig.add_function("+", 2, Fixity::Infix);
  sig.add_function("*", 2, Fixity::Infix);
  if (with_minus) sig.add_function("-", 2, Fixity::Infix);
  sig.add_constant("0");
  sig.add_constant("1");
  return sig;
}

}  // namespace modelglass
