#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcqa::html {

struct Tag {
    std::string name;  // lowercase
    bool closing = false;
    std::vector<std::pair<std::string, std::string>> attributes;  // names lowercase, values entity-decoded

    std::optional<std::string_view> attribute(std::string_view name) const;
};

struct Visitor {
    std::function<void(const Tag&)> on_tag;
    std::function<void(std::string_view)> on_text;  // raw, not entity-decoded
};

/// Tolerant single-pass scan. Comments, doctypes and processing
/// instructions are skipped; the content of script and style elements is
/// never reported as text.
void scan(std::string_view markup, const Visitor& visitor);

/// Replaces the common named entities and numeric character references.
std::string decode_entities(std::string_view text);

/// Visible text: tags stripped, script/style dropped, entities decoded,
/// whitespace collapsed to single spaces and trimmed.
std::string extract_text(std::string_view markup);

}  // namespace qcqa::html
