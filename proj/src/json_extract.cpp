#include "uxlens/json_extract.hpp"

#include <vector>

#include "uxlens/errors.hpp"

namespace uxlens {

namespace {

// Returns the index one past the balanced region starting at `start`, or
// npos when the region never balances (unterminated or mismatched closer).
std::size_t find_balanced_end(std::string_view text, std::size_t start) {
    std::vector<char> stack;
    bool in_string = false;
    bool escaped = false;

    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        switch (c) {
        case '"':
            in_string = true;
            break;
        case '{':
            stack.push_back('}');
            break;
        case '[':
            stack.push_back(']');
            break;
        case '}':
        case ']':
            if (stack.empty() || stack.back() != c) return std::string_view::npos;
            stack.pop_back();
            if (stack.empty()) return i + 1;
            break;
        default:
            break;
        }
    }
    return std::string_view::npos;
}

} // namespace

nlohmann::json extract_json(std::string_view model_text) {
    for (std::size_t i = 0; i < model_text.size(); ++i) {
        const char c = model_text[i];
        if (c != '{' && c != '[') continue;

        const std::size_t end = find_balanced_end(model_text, i);
        if (end == std::string_view::npos) continue;

        const std::string_view region = model_text.substr(i, end - i);
        try {
            return nlohmann::json::parse(region);
        } catch (const nlohmann::json::parse_error& e) {
            throw MalformedJsonError("balanced region is not valid JSON: " +
                                     std::string(e.what()));
        }
    }
    throw NoJsonFoundError("no JSON value found in model output");
}

} // namespace uxlens
