#include "qcqa/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qcqa::html {
namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void append_utf8(std::string& out, unsigned long cp)
{
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        cp = 0xFFFD;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    }
    else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Parses "<...>" starting at markup[pos] == '<'. Returns the index one past
// '>' (or markup.size() for an unterminated tag).
std::size_t parse_tag(std::string_view markup, std::size_t pos, Tag& tag)
{
    std::size_t i = pos + 1;
    if (i < markup.size() && markup[i] == '/') {
        tag.closing = true;
        ++i;
    }
    std::size_t start = i;
    while (i < markup.size() && !is_space(markup[i]) && markup[i] != '>' && markup[i] != '/')
        ++i;
    tag.name = lower(markup.substr(start, i - start));

    while (i < markup.size() && markup[i] != '>') {
        if (is_space(markup[i]) || markup[i] == '/') {
            ++i;
            continue;
        }
        std::size_t name_start = i;
        while (i < markup.size() && !is_space(markup[i]) && markup[i] != '=' && markup[i] != '>')
            ++i;
        std::string name = lower(markup.substr(name_start, i - name_start));
        while (i < markup.size() && is_space(markup[i]))
            ++i;
        std::string value;
        if (i < markup.size() && markup[i] == '=') {
            ++i;
            while (i < markup.size() && is_space(markup[i]))
                ++i;
            if (i < markup.size() && (markup[i] == '"' || markup[i] == '\'')) {
                char quote = markup[i++];
                auto end = markup.find(quote, i);
                if (end == std::string_view::npos)
                    end = markup.size();
                value = decode_entities(markup.substr(i, end - i));
                i = std::min(end + 1, markup.size());
            }
            else {
                std::size_t v = i;
                while (i < markup.size() && !is_space(markup[i]) && markup[i] != '>')
                    ++i;
                value = decode_entities(markup.substr(v, i - v));
            }
        }
        if (!name.empty())
            tag.attributes.emplace_back(std::move(name), std::move(value));
    }
    return std::min(i + 1, markup.size());
}

bool is_block(std::string_view name)
{
    static constexpr std::array<std::string_view, 32> blocks{
        "address", "article", "aside", "blockquote", "br", "dd", "div", "dl",
        "dt", "figcaption", "footer", "form", "h1", "h2", "h3", "h4",
        "h5", "h6", "header", "hr", "li", "main", "nav", "ol",
        "p", "pre", "section", "table", "td", "th", "title", "tr"};
    return std::find(blocks.begin(), blocks.end(), name) != blocks.end();
}

}  // namespace

std::optional<std::string_view> Tag::attribute(std::string_view name) const
{
    for (const auto& [k, v] : attributes)
        if (k == name)
            return std::string_view(v);
    return std::nullopt;
}

void scan(std::string_view markup, const Visitor& visitor)
{
    std::size_t i = 0;
    while (i < markup.size()) {
        auto lt = markup.find('<', i);
        if (lt == std::string_view::npos) {
            if (visitor.on_text)
                visitor.on_text(markup.substr(i));
            return;
        }
        // A '<' not followed by a tag-ish character is literal text.
        bool tag_start = lt + 1 < markup.size()
                         && (std::isalpha(static_cast<unsigned char>(markup[lt + 1]))
                             || markup[lt + 1] == '/' || markup[lt + 1] == '!' || markup[lt + 1] == '?');
        if (!tag_start) {
            if (visitor.on_text)
                visitor.on_text(markup.substr(i, lt + 1 - i));
            i = lt + 1;
            continue;
        }
        if (lt > i && visitor.on_text)
            visitor.on_text(markup.substr(i, lt - i));

        if (markup.substr(lt, 4) == "<!--") {
            auto end = markup.find("-->", lt + 4);
            i = end == std::string_view::npos ? markup.size() : end + 3;
            continue;
        }
        if (markup[lt + 1] == '!' || markup[lt + 1] == '?') {
            auto end = markup.find('>', lt);
            i = end == std::string_view::npos ? markup.size() : end + 1;
            continue;
        }

        Tag tag;
        i = parse_tag(markup, lt, tag);
        if (visitor.on_tag)
            visitor.on_tag(tag);

        if (!tag.closing && (tag.name == "script" || tag.name == "style")) {
            std::string closing = "</" + tag.name;
            std::size_t search = i;
            std::size_t end = std::string_view::npos;
            while (search < markup.size()) {
                auto cand = markup.find("</", search);
                if (cand == std::string_view::npos)
                    break;
                if (lower(markup.substr(cand, closing.size())) == closing) {
                    end = cand;
                    break;
                }
                search = cand + 2;
            }
            i = end == std::string_view::npos ? markup.size() : end;
        }
    }
}

std::string decode_entities(std::string_view text)
{
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 12> named{{
        {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"},
        {"nbsp", " "}, {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"}, {"hellip", "\xE2\x80\xA6"},
        {"rsquo", "\xE2\x80\x99"}, {"lsquo", "\xE2\x80\x98"}, {"copy", "\xC2\xA9"},
    }};
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out += text[i++];
            continue;
        }
        auto semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += text[i++];
            continue;
        }
        auto body = text.substr(i + 1, semi - i - 1);
        bool done = false;
        if (!body.empty() && body[0] == '#') {
            bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
            auto digits = body.substr(hex ? 2 : 1);
            if (!digits.empty()
                && std::all_of(digits.begin(), digits.end(), [hex](unsigned char c) {
                       return hex ? std::isxdigit(c) != 0 : std::isdigit(c) != 0;
                   })) {
                append_utf8(out, std::stoul(std::string(digits), nullptr, hex ? 16 : 10));
                done = true;
            }
        }
        else {
            for (const auto& [name, repl] : named) {
                if (body == name) {
                    out += repl;
                    done = true;
                    break;
                }
            }
        }
        if (done) {
            i = semi + 1;
        }
        else {
            out += text[i++];
        }
    }
    return out;
}

std::string extract_text(std::string_view markup)
{
    std::string raw;
    scan(markup, Visitor{
                     [&](const Tag& tag) {
                         if (is_block(tag.name))
                             raw += ' ';
                     },
                     [&](std::string_view text) { raw += text; },
                 });
    std::string decoded = decode_entities(raw);
    std::string out;
    out.reserve(decoded.size());
    bool pending_space = false;
    for (char c : decoded) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

}  // namespace qcqa::html
