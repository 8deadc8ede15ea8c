#pragma once

// Private tokenizer shared by the polynomial and form-polynomial parsers.

#include <cctype>
#include <string>
#include <vector>

#include "starpi/error.hpp"
#include "starpi/free_poly.hpp"

namespace starpi::detail {

enum class Tok { Var, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, F1, F2, End };

struct Token {
    Tok kind;
    Letter letter{};      // for Var
    std::string number;   // for Int (digits only)
};

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto peek = [&](std::size_t k) -> char {
        return i + k < text.size() ? text[i + k] : '\0';
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '+') { out.push_back({Tok::Plus}); ++i; continue; }
        if (c == '-') { out.push_back({Tok::Minus}); ++i; continue; }
        if (c == '*') { out.push_back({Tok::Star}); ++i; continue; }
        if (c == '^') { out.push_back({Tok::Caret}); ++i; continue; }
        if (c == '/') { out.push_back({Tok::Slash}); ++i; continue; }
        if (c == '(') { out.push_back({Tok::LParen}); ++i; continue; }
        if (c == ')') { out.push_back({Tok::RParen}); ++i; continue; }
        if (c == ',') { out.push_back({Tok::Comma}); ++i; continue; }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) num += text[i++];
            out.push_back({Tok::Int, {}, num});
            continue;
        }
        if (c == 'f' && (peek(1) == '1' || peek(1) == '2') && peek(2) == '(') {
            out.push_back({peek(1) == '1' ? Tok::F1 : Tok::F2});
            i += 2;
            continue;
        }
        if (c == 'y' || c == 'z' || c == 'x') {
            std::size_t j = i + 1;
            std::string num;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) num += text[j++];
            if (num.empty()) throw Error("parse: variable '" + std::string(1, c) + "' needs an index");
            bool starred = false;
            if (j < text.size() && text[j] == '\'') {
                if (c != 'x') throw Error("parse: only general variables may be starred");
                starred = true;
                ++j;
            }
            Alphabet ab = c == 'y' ? Alphabet::Sym : c == 'z' ? Alphabet::Skew : Alphabet::Gen;
            int idx = std::stoi(num);
            if (idx < 1) throw Error("parse: variable indices start at 1");
            out.push_back({Tok::Var, Letter{ab, idx, starred}});
            i = j;
            continue;
        }
        throw Error(std::string("parse: unexpected character '") + c + "'");
    }
    out.push_back({Tok::End});
    return out;
}

}  // namespace starpi::detail
