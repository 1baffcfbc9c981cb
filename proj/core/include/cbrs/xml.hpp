#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cbrs/error.hpp"

namespace cbrs::xml {

struct Attribute {
  std::string name;
  std::string value;
};

enum class EventType { start_element, end_element, text, eof };

struct Event {
  EventType type = EventType::eof;
  std::string name;                    // element events; namespace prefix kept
  std::vector<Attribute> attributes;   // start_element only
  std::string text;                    // text events, entities decoded
};

/// Minimal non-validating XML pull parser: elements, attributes, character
/// data, CDATA, comments, processing instructions and the five predefined
/// entities (plus numeric references). DTDs are skipped, not interpreted.
/// Malformed input raises ParseError with a 1-based line number.
class PullParser {
public:
  explicit PullParser(std::string_view input);

  /// Next event; returns eof forever once the document is exhausted.
  Event next();

  int line() const { return line_; }

private:
  char peek(std::size_t ahead = 0) const;
  bool eof() const { return pos_ >= input_.size(); }
  void advance(std::size_t n = 1);
  void skip_whitespace();
  bool consume(std::string_view token);
  void expect(char c, const char* what);
  std::string read_name();
  std::string read_attr_value();
  std::string decode_entities(std::string_view raw) const;
  void skip_comment();
  void skip_processing_instruction();
  void skip_doctype();
  [[noreturn]] void fail(const std::string& message) const;

  std::string_view input_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::vector<std::string> open_elements_;
  bool pending_end_ = false;   // self-closing tag: emit end on next()
  std::string pending_name_;
  bool done_ = false;
};

/// Escapes &, <, >, " and ' for use in element text or attribute values.
std::string escape(std::string_view text);

} // namespace cbrs::xml
