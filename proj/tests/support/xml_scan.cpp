#include "support/xml_scan.hpp"

#include <cctype>
#include <vector>

namespace tmc::test {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == ':' || c == '.';
}

}  // namespace

XmlScanOutcome scan_xml(const std::string& text) {
    XmlScanOutcome out;
    std::vector<std::string> stack;
    int roots = 0;
    std::size_t i = 0;

    auto fail = [&](const std::string& message) {
        out.ok = false;
        out.error = message + " at byte " + std::to_string(i);
        return out;
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == '<') {
            ++i;
            if (i >= text.size()) return fail("dangling '<'");
            bool closing = text[i] == '/';
            if (closing) ++i;
            std::string name;
            while (i < text.size() && is_name_char(text[i])) name += text[i++];
            if (name.empty()) return fail("empty tag name");

            // Attributes.
            bool self_closing = false;
            for (;;) {
                while (i < text.size() &&
                       std::isspace(static_cast<unsigned char>(text[i])))
                    ++i;
                if (i >= text.size()) return fail("unterminated tag");
                if (text[i] == '>') {
                    ++i;
                    break;
                }
                if (text[i] == '/') {
                    ++i;
                    if (i >= text.size() || text[i] != '>') return fail("bad '/>'");
                    ++i;
                    self_closing = true;
                    break;
                }
                if (closing) return fail("attributes on closing tag");
                std::string attr;
                while (i < text.size() && is_name_char(text[i])) attr += text[i++];
                if (attr.empty()) return fail("bad attribute name");
                if (i >= text.size() || text[i] != '=') return fail("expected '='");
                ++i;
                if (i >= text.size() || text[i] != '"') return fail("unquoted value");
                ++i;
                while (i < text.size() && text[i] != '"') {
                    if (text[i] == '<') return fail("'<' in attribute value");
                    ++i;
                }
                if (i >= text.size()) return fail("unterminated attribute value");
                ++i;
            }

            if (closing) {
                if (self_closing) return fail("closing tag with '/>'");
                if (stack.empty()) return fail("unmatched closing tag " + name);
                if (stack.back() != name) {
                    return fail("mismatched tag: expected </" + stack.back() + "> got </" +
                                name + ">");
                }
                stack.pop_back();
            } else {
                ++out.element_count;
                if (stack.empty()) {
                    ++roots;
                    if (roots > 1) return fail("multiple root elements");
                }
                if (!self_closing) stack.push_back(name);
            }
            continue;
        }
        if (c == '&') {
            std::size_t semi = text.find(';', i);
            if (semi == std::string::npos || semi - i > 8) return fail("bad entity");
            std::string entity = text.substr(i + 1, semi - i - 1);
            if (entity != "amp" && entity != "lt" && entity != "gt" && entity != "quot" &&
                entity != "apos") {
                return fail("unknown entity &" + entity + ";");
            }
            i = semi + 1;
            continue;
        }
        if (c == '>') return fail("stray '>'");
        ++i;
    }
    if (!stack.empty()) return fail("unclosed element " + stack.back());
    if (roots != 1) return fail("expected exactly one root element");
    out.ok = true;
    return out;
}

}  // namespace tmc::test
