#pragma once

// Minimal namespace-aware XML reader. Enough for GML geometry literals and
// SPARQL Query Results XML documents: elements, attributes, character data,
// CDATA, comments, processing instructions and the predefined/numeric entities.
// DTDs are rejected.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gsb::xml {

class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Attribute {
  std::string qname;
  std::string ns;  // resolved namespace IRI, empty for unprefixed attributes
  std::string local;
  std::string value;
};

struct Element {
  std::string qname;
  std::string ns;  // resolved namespace IRI, empty when none is in scope
  std::string local;
  std::vector<Attribute> attributes;  // xmlns declarations excluded
  std::vector<std::pair<std::string, std::string>> namespace_decls;  // prefix ("" = default) -> IRI
  std::vector<Element> children;
  std::string text;  // character data directly inside this element, concatenated

  const Element* child(std::string_view local_name) const;
  std::vector<const Element*> children_named(std::string_view local_name) const;
  const std::string* attribute(std::string_view local_name) const;
};

// Parses a complete document with exactly one root element.
Element parse(std::string_view document);

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

}  // namespace gsb::xml
