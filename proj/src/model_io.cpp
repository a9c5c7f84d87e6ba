#include <cctype>
#include <charconv>
#include <string>

#include "modelglass/error.hpp"
#include "modelglass/model.hpp"

namespace modelglass {

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return i_ >= text_.size();
  }

  char peek() {
    skip_space();
    return i_ < text_.size() ? text_[i_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    bump();
    return true;
  }

  bool accept(std::string_view s) {
    skip_space();
    if (text_.substr(i_, s.size()) != s) return false;
    for (std::size_t k = 0; k < s.size(); ++k) bump();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  /// A run of characters up to whitespace or any of `stops`.
  std::string word(std::string_view stops) {
    skip_space();
    std::size_t start = i_;
    while (i_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[i_])) &&
           stops.find(text_[i_]) == std::string_view::npos) {
      bump();
    }
    if (start == i_) fail("expected a name");
    return std::string(text_.substr(start, i_ - start));
  }

  std::size_t number() {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + i_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    std::size_t len = static_cast<std::size_t>(ptr - (text_.data() + i_));
    for (std::size_t k = 0; k < len; ++k) bump();
    return value;
  }

  /// True if the next word is one of the statement keywords.
  bool at_keyword() {
    skip_space();
    for (std::string_view kw : {"rel", "fun", "const", "model"}) {
      if (text_.substr(i_, kw.size()) == kw && i_ + kw.size() < text_.size() &&
          std::isspace(static_cast<unsigned char>(text_[i_ + kw.size()]))) {
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_); }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  void bump() {
    if (text_[i_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++i_;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::vector<Element> tuple(Scanner& s) {
  std::vector<Element> out;
  s.expect('(');
  if (s.accept(')')) return out;
  do {
    out.push_back(static_cast<Element>(s.number()));
  } while (s.accept(','));
  s.expect(')');
  return out;
}

}  // namespace

Model load_model(std::string_view text, const Signature& sig) {
  Scanner s(text);
  if (!s.accept("model")) s.fail("expected header 'model SIZE'");
  std::size_t size = s.number();
  if (size == 0) s.fail("model domain must be nonempty");
  ModelBuilder builder(sig, size);

  auto guarded = [&](auto&& action, std::size_t line, std::size_t column) {
    try {
      action();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line, column);
    }
  };

  while (!s.at_end()) {
    std::size_t line = s.line(), column = s.column();
    if (s.accept("const")) {
      std::string name = s.word("=");
      s.expect('=');
      std::size_t value = s.number();
      auto c = sig.find_constant(name);
      if (!c) throw ParseError("unknown symbol '" + name + "'", line, column);
      guarded([&] { builder.set_constant(*c, static_cast<Element>(value)); }, line, column);
    } else if (s.accept("rel")) {
      std::string name = s.word(":");
      s.expect(':');
      auto r = sig.find_relation(name);
      if (!r) throw ParseError("unknown symbol '" + name + "'", line, column);
      while (s.peek() == '(') {
        std::size_t tl = s.line(), tc = s.column();
        auto t = tuple(s);
        guarded([&] { builder.add_tuple(*r, t); }, tl, tc);
      }
    } else if (s.accept("fun")) {
      std::string name = s.word(":");
      s.expect(':');
      auto f = sig.find_function(name);
      if (!f) throw ParseError("unknown symbol '" + name + "'", line, column);
      while (s.peek() == '(') {
        std::size_t tl = s.line(), tc = s.column();
        auto args = tuple(s);
        if (!s.accept("->")) s.fail("expected '->'");
        std::size_t value = s.number();
        guarded([&] { builder.set_function(*f, args, static_cast<Element>(value)); }, tl, tc);
      }
    } else {
      s.fail("expected 'rel', 'fun' or 'const'");
    }
  }
  try {
    return builder.build();
  } catch (const Error& e) {
    throw ParseError(e.what(), s.line(), s.column());
  }
}

std::string model_to_text(const Model& m) {
  const auto& sig = m.signature();
  const std::size_t n = m.size();
  std::string out = "model " + std::to_string(n) + "\n";
  auto decode = [n](std::size_t idx, std::size_t arity) {
    std::vector<Element> t(arity);
    for (std::size_t i = arity; i-- > 0;) {
      t[i] = static_cast<Element>(idx % n);
      idx /= n;
    }
    return t;
  };
  auto tuple_text = [](const std::vector<Element>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
  };
  for (std::size_t r = 1; r < sig.relations().size(); ++r) {
    out += "rel " + sig.relations()[r].name + ":";
    m.relation_table(r).for_each([&](std::size_t idx) { out += " " + tuple_text(decode(idx, sig.relations()[r].arity)); });
    out += "\n";
  }
  for (std::size_t f = 0; f < sig.functions().size(); ++f) {
    out += "fun " + sig.functions()[f].name + ":";
    const auto& table = m.function_table(f);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      out += " " + tuple_text(decode(idx, sig.functions()[f].arity)) + "->" + std::to_string(table[idx]);
    }
    out += "\n";
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c) {
    out += "const " + sig.constants()[c] + " = " + std::to_string(m.constant(c)) + "\n";
  }
  return out;
}

}  // namespace modelglass
