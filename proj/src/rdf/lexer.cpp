#include "lexer.hpp"

#include <cctype>

namespace gsb::rdf::detail {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == ':' ||
         c == '%';
}

}  // namespace

const Token& Lexer::peek() {
  if (!has_peeked_) {
    peeked_ = scan();
    has_peeked_ = true;
  }
  return peeked_;
}

Token Lexer::next() {
  if (has_peeked_) {
    has_peeked_ = false;
    return std::move(peeked_);
  }
  return scan();
}

void Lexer::fail(const std::string& what) const { throw SyntaxError(what, line_); }

void Lexer::skip_space() {
  while (pos_ < in_.size()) {
    const char c = in_[pos_];
    if (c == '\n') {
      ++line_;
      ++pos_;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (c == '#') {
      while (pos_ < in_.size() && in_[pos_] != '\n') ++pos_;
    } else {
      break;
    }
  }
}

// '<' starts an IRI when a '>' follows before any character IRIs cannot hold.
bool Lexer::looks_like_iri() const {
  for (std::size_t i = pos_ + 1; i < in_.size(); ++i) {
    const char c = in_[i];
    if (c == '>') return true;
    if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\')
      return false;
  }
  return false;
}

void Lexer::append_utf8(std::string& out, unsigned long cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

void Lexer::append_escape(std::string& out) {
  if (pos_ >= in_.size()) fail("unterminated escape");
  const char c = in_[pos_++];
  switch (c) {
    case 't': out += '\t'; return;
    case 'n': out += '\n'; return;
    case 'r': out += '\r'; return;
    case 'b': out += '\b'; return;
    case 'f': out += '\f'; return;
    case '"': out += '"'; return;
    case '\'': out += '\''; return;
    case '\\': out += '\\'; return;
    case 'u':
    case 'U': {
      const std::size_t n = c == 'u' ? 4 : 8;
      if (pos_ + n > in_.size()) fail("truncated unicode escape");
      unsigned long cp = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const char h = in_[pos_ + i];
        if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad unicode escape");
        cp = cp * 16 + static_cast<unsigned long>(std::isdigit(static_cast<unsigned char>(h)) ? h - '0'
                                                                                               : (std::tolower(h) - 'a' + 10));
      }
      pos_ += n;
      append_utf8(out, cp);
      return;
    }
  }
  fail(std::string("unknown escape \\") + c);
}

std::string Lexer::read_string() {
  const char quote = in_[pos_];
  const bool long_form = in_.substr(pos_, 3) == std::string(3, quote);
  pos_ += long_form ? 3 : 1;
  std::string out;
  while (true) {
    if (pos_ >= in_.size()) fail("unterminated string");
    const char c = in_[pos_];
    if (long_form && in_.substr(pos_, 3) == std::string(3, quote)) {
      pos_ += 3;
      // a quote directly before the closing triple belongs to the content
      while (pos_ < in_.size() && in_[pos_] == quote) {
        out += quote;
        ++pos_;
      }
      return out;
    }
    if (!long_form && c == quote) {
      ++pos_;
      return out;
    }
    if (!long_form && (c == '\n' || c == '\r')) fail("newline in short string");
    ++pos_;
    if (c == '\\') {
      append_escape(out);
    } else {
      if (c == '\n') ++line_;
      out += c;
    }
  }
}

Token Lexer::scan() {
  skip_space();
  Token t;
  t.line = line_;
  if (pos_ >= in_.size()) return t;
  const char c = in_[pos_];
  const auto rest = in_.substr(pos_);

  if (c == '<' && looks_like_iri()) {
    const auto end = in_.find('>', pos_);
    t.type = Tok::IriRef;
    t.text = std::string(in_.substr(pos_ + 1, end - pos_ - 1));
    pos_ = end + 1;
    return t;
  }
  if (c == '"' || c == '\'') {
    t.type = Tok::String;
    t.text = read_string();
    return t;
  }
  if (c == '?' || c == '$') {
    ++pos_;
    const auto start = pos_;
    while (pos_ < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("empty variable name");
    t.type = Tok::Var;
    t.text = std::string(in_.substr(start, pos_ - start));
    return t;
  }
  if (c == '@') {
    ++pos_;
    const auto start = pos_;
    while (pos_ < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '-')) ++pos_;
    if (pos_ == start) fail("empty language tag");
    t.type = Tok::LangTag;
    t.text = std::string(in_.substr(start, pos_ - start));
    return t;
  }
  if (rest.starts_with("^^")) {
    pos_ += 2;
    t.type = Tok::DoubleCaret;
    return t;
  }
  if (rest.starts_with("_:")) {
    pos_ += 2;
    const auto start = pos_;
    while (pos_ < in_.size() && is_name_char(in_[pos_]) && in_[pos_] != ':') ++pos_;
    while (pos_ > start && in_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    t.type = Tok::Blank;
    t.text = std::string(in_.substr(start, pos_ - start));
    return t;
  }
  if (std::isdigit(static_cast<unsigned char>(c)) ||
      (c == '.' && pos_ + 1 < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_ + 1])))) {
    const auto start = pos_;
    t.type = Tok::Integer;
    while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    if (pos_ + 1 < in_.size() && in_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(in_[pos_ + 1]))) {
      t.type = Tok::Decimal;
      ++pos_;
      while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }
    if (pos_ < in_.size() && (in_[pos_] == 'e' || in_[pos_] == 'E')) {
      t.type = Tok::Double;
      ++pos_;
      if (pos_ < in_.size() && (in_[pos_] == '+' || in_[pos_] == '-')) ++pos_;
      const auto exp_start = pos_;
      while (pos_ < in_.size() && std::isdigit(static_cast<unsigned char>(in_[pos_]))) ++pos_;
      if (pos_ == exp_start) fail("malformed exponent");
    }
    t.text = std::string(in_.substr(start, pos_ - start));
    return t;
  }
  if (is_name_start(c) || c == ':') {
    const auto start = pos_;
    while (pos_ < in_.size() && is_name_char(in_[pos_])) ++pos_;
    while (pos_ > start + 1 && in_[pos_ - 1] == '.') --pos_;
    t.text = std::string(in_.substr(start, pos_ - start));
    t.type = t.text.find(':') == std::string::npos ? Tok::Name : Tok::PName;
    return t;
  }
  for (std::string_view two : {"<=", ">=", "!=", "&&", "||"}) {
    if (rest.starts_with(two)) {
      pos_ += 2;
      t.type = Tok::Punct;
      t.text = std::string(two);
      return t;
    }
  }
  if (std::string_view("{}()[].;,=<>!+-*/").find(c) != std::string_view::npos) {
    ++pos_;
    t.type = Tok::Punct;
    t.text = std::string(1, c);
    return t;
  }
  fail(std::string("unexpected character '") + c + "'");
}

std::string expand_pname(const std::string& pname, const PrefixMap& prefixes, std::size_t line) {
  const auto colon = pname.find(':');
  const auto it = prefixes.find(pname.substr(0, colon));
  if (it == prefixes.end()) throw SyntaxError("undeclared prefix '" + pname.substr(0, colon) + "'", line);
  return it->second + pname.substr(colon + 1);
}

}  // namespace gsb::rdf::detail
