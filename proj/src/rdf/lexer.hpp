#pragma once

// Tokenizer shared by the Turtle reader and the SPARQL parser; both languages
// use the same term syntax.

#include <cstddef>
#include <string>
#include <string_view>

#include "gsb/rdf.hpp"

namespace gsb::rdf::detail {

enum class Tok {
  IriRef,       // text = IRI without brackets
  PName,        // text = "prefix:local" (local may be empty)
  Blank,        // text = label without "_:"
  Var,          // text = name without ? or $
  String,       // text = unescaped lexical form
  LangTag,      // text = tag without "@" (also "prefix"/"base" directives)
  DoubleCaret,  // ^^
  Integer,
  Decimal,
  Double,
  Name,  // bare word: keywords, `a`, true/false, function names
  Punct, // text = one of { } ( ) [ ] . ; , = != < <= > >= ! && || + - * /
  End,
};

struct Token {
  Tok type = Tok::End;
  std::string text;
  std::size_t line = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view input) : in_(input) {}

  const Token& peek();
  Token next();
  std::size_t line() const { return line_; }

 private:
  Token scan();
  void skip_space();
  [[noreturn]] void fail(const std::string& what) const;
  bool looks_like_iri() const;
  std::string read_string();
  void append_escape(std::string& out);
  static void append_utf8(std::string& out, unsigned long cp);

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  bool has_peeked_ = false;
  Token peeked_;
};

// "prefix:local" -> full IRI; throws SyntaxError for an undeclared prefix.
std::string expand_pname(const std::string& pname, const PrefixMap& prefixes, std::size_t line);

}  // namespace gsb::rdf::detail
