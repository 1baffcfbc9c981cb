#include "cbrs/xml.hpp"

#include <cctype>
#include <charconv>

namespace cbrs::xml {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '-' || c == '.';
}

} // namespace

PullParser::PullParser(std::string_view input) : input_(input) {
  // strip a UTF-8 byte order mark if present
  if (input_.size() >= 3 && static_cast<unsigned char>(input_[0]) == 0xEF &&
      static_cast<unsigned char>(input_[1]) == 0xBB &&
      static_cast<unsigned char>(input_[2]) == 0xBF) {
    pos_ = 3;
  }
}

char PullParser::peek(std::size_t ahead) const {
  return pos_ + ahead < input_.size() ? input_[pos_ + ahead] : '\0';
}

void PullParser::advance(std::size_t n) {
  for (std::size_t i = 0; i < n && pos_ < input_.size(); ++i) {
    if (input_[pos_] == '\n') ++line_;
    ++pos_;
  }
}

void PullParser::skip_whitespace() {
  while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
}

bool PullParser::consume(std::string_view token) {
  if (input_.substr(pos_, token.size()) == token) {
    advance(token.size());
    return true;
  }
  return false;
}

void PullParser::expect(char c, const char* what) {
  if (peek() != c) fail(std::string("expected ") + what);
  advance();
}

std::string PullParser::read_name() {
  if (!is_name_start(peek())) fail("expected name");
  std::size_t start = pos_;
  while (!eof() && is_name_char(peek())) advance();
  return std::string(input_.substr(start, pos_ - start));
}

std::string PullParser::read_attr_value() {
  const char quote = peek();
  if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
  advance();
  std::size_t start = pos_;
  while (!eof() && peek() != quote) advance();
  if (eof()) fail("unterminated attribute value");
  std::string value = decode_entities(input_.substr(start, pos_ - start));
  advance();
  return value;
}

std::string PullParser::decode_entities(std::string_view raw) const {
  if (raw.find('&') == std::string_view::npos) return std::string(raw);
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    const std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos) fail("unterminated entity reference");
    const std::string_view body = raw.substr(i + 1, semi - i - 1);
    if (body == "amp") out.push_back('&');
    else if (body == "lt") out.push_back('<');
    else if (body == "gt") out.push_back('>');
    else if (body == "quot") out.push_back('"');
    else if (body == "apos") out.push_back('\'');
    else if (!body.empty() && body[0] == '#') {
      unsigned long code = 0;
      bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
      const char* first = body.data() + (hex ? 2 : 1);
      const char* last = body.data() + body.size();
      auto [p, ec] = std::from_chars(first, last, code, hex ? 16 : 10);
      if (ec != std::errc{} || p != last || code > 0x10FFFF) {
        fail("bad numeric character reference");
      }
      // encode as UTF-8
      if (code < 0x80) {
        out.push_back(static_cast<char>(code));
      } else if (code < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (code >> 6)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      } else if (code < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (code >> 12)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      } else {
        out.push_back(static_cast<char>(0xF0 | (code >> 18)));
        out.push_back(static_cast<char>(0x80 | ((code >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((code >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (code & 0x3F)));
      }
    } else {
      fail("unknown entity reference '" + std::string(body) + "'");
    }
    i = semi + 1;
  }
  return out;
}

void PullParser::skip_comment() {
  // positioned just past "<!--"
  const std::size_t end = input_.find("-->", pos_);
  if (end == std::string_view::npos) fail("unterminated comment");
  advance(end + 3 - pos_);
}

void PullParser::skip_processing_instruction() {
  const std::size_t end = input_.find("?>", pos_);
  if (end == std::string_view::npos) fail("unterminated processing instruction");
  advance(end + 2 - pos_);
}

void PullParser::skip_doctype() {
  // positioned just past "<!DOCTYPE"; skip to the matching '>' allowing one
  // level of internal subset brackets
  int depth = 0;
  while (!eof()) {
    const char c = peek();
    if (c == '[') ++depth;
    else if (c == ']') --depth;
    else if (c == '>' && depth == 0) {
      advance();
      return;
    }
    advance();
  }
  fail("unterminated DOCTYPE");
}

void PullParser::fail(const std::string& message) const {
  throw ParseError(message, line_);
}

Event PullParser::next() {
  if (pending_end_) {
    pending_end_ = false;
    Event ev;
    ev.type = EventType::end_element;
    ev.name = pending_name_;
    return ev;
  }
  for (;;) {
    if (eof()) {
      if (!open_elements_.empty()) {
        fail("unexpected end of input inside <" + open_elements_.back() + ">");
      }
      done_ = true;
      return Event{};
    }
    if (peek() != '<') {
      // character data up to the next markup
      std::size_t start = pos_;
      std::string text;
      while (!eof()) {
        if (peek() == '<') {
          if (input_.substr(pos_, 9) == "<![CDATA[") {
            text += decode_entities(input_.substr(start, pos_ - start));
            advance(9);
            const std::size_t end = input_.find("]]>", pos_);
            if (end == std::string_view::npos) fail("unterminated CDATA section");
            text.append(input_.substr(pos_, end - pos_));
            advance(end + 3 - pos_);
            start = pos_;
            continue;
          }
          break;
        }
        advance();
      }
      text += decode_entities(input_.substr(start, pos_ - start));
      if (open_elements_.empty()) {
        // whitespace between top-level constructs is not an event
        bool blank = true;
        for (char c : text) {
          if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        }
        if (blank) continue;
        fail("text outside the document element");
      }
      Event ev;
      ev.type = EventType::text;
      ev.text = std::move(text);
      return ev;
    }
    if (consume("<!--")) {
      skip_comment();
      continue;
    }
    if (input_.substr(pos_, 9) == "<![CDATA[") {
      if (open_elements_.empty()) fail("CDATA outside the document element");
      advance(9);
      const std::size_t end = input_.find("]]>", pos_);
      if (end == std::string_view::npos) fail("unterminated CDATA section");
      Event ev;
      ev.type = EventType::text;
      ev.text = std::string(input_.substr(pos_, end - pos_));
      advance(end + 3 - pos_);
      return ev;
    }
    if (consume("<?")) {
      skip_processing_instruction();
      continue;
    }
    if (consume("<!DOCTYPE")) {
      skip_doctype();
      continue;
    }
    if (input_.substr(pos_, 2) == "</") {
      advance(2);
      const std::string name = read_name();
      skip_whitespace();
      expect('>', "'>' after closing tag name");
      if (open_elements_.empty() || open_elements_.back() != name) {
        fail("mismatched closing tag </" + name + ">");
      }
      open_elements_.pop_back();
      Event ev;
      ev.type = EventType::end_element;
      ev.name = name;
      return ev;
    }
    // start tag
    advance();  // '<'
    Event ev;
    ev.type = EventType::start_element;
    ev.name = read_name();
    for (;;) {
      skip_whitespace();
      const char c = peek();
      if (c == '>') {
        advance();
        open_elements_.push_back(ev.name);
        return ev;
      }
      if (c == '/') {
        advance();
        expect('>', "'>' after '/'");
        pending_end_ = true;
        pending_name_ = ev.name;
        return ev;
      }
      if (eof()) fail("unterminated start tag <" + ev.name + ">");
      Attribute attr;
      attr.name = read_name();
      skip_whitespace();
      expect('=', "'=' after attribute name");
      skip_whitespace();
      attr.value = read_attr_value();
      ev.attributes.push_back(std::move(attr));
    }
  }
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

} // namespace cbrs::xml
