#include "gsb/xml.hpp"

#include <map>

namespace gsb::xml {

namespace {

constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";

bool is_name_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void append_utf8(std::string& out, unsigned long cp) {
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

using Scope = std::map<std::string, std::string>;

class Parser {
 public:
  explicit Parser(std::string_view doc) : doc_(doc) {}

  Element parse_document() {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    Scope scope{{"xml", std::string(kXmlNamespace)}};
    Element root = parse_element(scope);
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw XmlError(what, pos_); }
  bool at_end() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  void expect(std::string_view s) {
    if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }

  void skip_until(std::string_view terminator) {
    const auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail("unterminated construct");
    pos_ = end + terminator.size();
  }

  // Whitespace, comments and processing instructions outside the root element.
  void skip_misc() {
    for (;;) {
      skip_space();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!DOCTYPE")) {
        fail("DTDs are not supported");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    if (at_end() || !is_name_start(peek())) fail("expected a name");
    const auto start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    return std::string(doc_.substr(start, pos_ - start));
  }

  void parse_reference(std::string& out) {
    expect("&");
    const auto semi = doc_.find(';', pos_);
    if (semi == std::string_view::npos) fail("unterminated entity reference");
    const auto name = doc_.substr(pos_, semi - pos_);
    if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "amp") out += '&';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else if (!name.empty() && name[0] == '#') {
      unsigned long cp = 0;
      try {
        cp = name.size() > 1 && (name[1] == 'x' || name[1] == 'X')
                 ? std::stoul(std::string(name.substr(2)), nullptr, 16)
                 : std::stoul(std::string(name.substr(1)), nullptr, 10);
      } catch (const std::exception&) {
        fail("bad character reference");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity '" + std::string(name) + "'");
    }
    pos_ = semi + 1;
  }

  std::string parse_attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    const char quote = peek();
    ++pos_;
    std::string value;
    while (!at_end() && peek() != quote) {
      if (peek() == '&') parse_reference(value);
      else if (peek() == '<') fail("'<' in attribute value");
      else value += doc_[pos_++];
    }
    if (at_end()) fail("unterminated attribute value");
    ++pos_;
    return value;
  }

  static std::pair<std::string, std::string> split_qname(const std::string& qname) {
    const auto colon = qname.find(':');
    if (colon == std::string::npos) return {"", qname};
    return {qname.substr(0, colon), qname.substr(colon + 1)};
  }

  Element parse_element(const Scope& parent_scope) {
    const auto open_at = pos_;
    expect("<");
    Element element;
    element.qname = parse_name();
    std::vector<std::pair<std::string, std::string>> raw_attributes;
    bool self_closing = false;
    for (;;) {
      skip_space();
      if (at_end()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        self_closing = true;
        break;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      std::string name = parse_name();
      skip_space();
      expect("=");
      skip_space();
      raw_attributes.emplace_back(std::move(name), parse_attribute_value());
    }

    Scope scope = parent_scope;
    for (const auto& [name, value] : raw_attributes) {
      if (name == "xmlns") {
        scope[""] = value;
        element.namespace_decls.emplace_back("", value);
      } else if (name.rfind("xmlns:", 0) == 0) {
        scope[name.substr(6)] = value;
        element.namespace_decls.emplace_back(name.substr(6), value);
      }
    }
    auto resolve = [&](const std::string& prefix, bool is_attribute) -> std::string {
      if (prefix.empty() && is_attribute) return "";
      const auto it = scope.find(prefix);
      if (it == scope.end()) {
        if (prefix.empty()) return "";
        pos_ = open_at;
        fail("undeclared namespace prefix '" + prefix + "'");
      }
      return it->second;
    };
    auto [prefix, local] = split_qname(element.qname);
    element.ns = resolve(prefix, false);
    element.local = local;
    for (auto& [name, value] : raw_attributes) {
      if (name == "xmlns" || name.rfind("xmlns:", 0) == 0) continue;
      auto [attr_prefix, attr_local] = split_qname(name);
      element.attributes.push_back({name, resolve(attr_prefix, true), attr_local, std::move(value)});
    }
    if (self_closing) return element;

    for (;;) {
      if (at_end()) fail("unterminated element <" + element.qname + ">");
      if (starts_with("</")) {
        pos_ += 2;
        const std::string closing = parse_name();
        if (closing != element.qname)
          fail("mismatched end tag </" + closing + "> for <" + element.qname + ">");
        skip_space();
        expect(">");
        return element;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<![CDATA[")) {
        pos_ += 9;
        const auto end = doc_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        element.text.append(doc_.substr(pos_, end - pos_));
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else if (peek() == '<') {
        element.children.push_back(parse_element(scope));
      } else if (peek() == '&') {
        parse_reference(element.text);
      } else {
        element.text += doc_[pos_++];
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

}  // namespace

const Element* Element::child(std::string_view local_name) const {
  for (const auto& c : children)
    if (c.local == local_name) return &c;
  return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view local_name) const {
  std::vector<const Element*> out;
  for (const auto& c : children)
    if (c.local == local_name) out.push_back(&c);
  return out;
}

const std::string* Element::attribute(std::string_view local_name) const {
  for (const auto& a : attributes)
    if (a.local == local_name) return &a.value;
  return nullptr;
}

Element parse(std::string_view document) { return Parser(document).parse_document(); }

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace gsb::xml
