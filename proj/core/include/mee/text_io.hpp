#pragma once

// Line-oriented text formats. `#` starts a comment anywhere on a line.
//
//   relation NAME arity K        followed by K-bit tuple strings
//   include PATH                 (language files) splice another language file
//   language PATH                (formula files) load the relations from a file
//   vars a b c                   declare variables in id order
//   clause NAME a b              one clause
//   function NAME arity K table BITS
//   (f x (g y z))                B-formula expression
//   mee bound=K measure=M [fixed-negative=true]   instance header line
//   term x y !z                  one DNF term
//
// Relative paths are resolved against the directory of the including file.

#include <filesystem>
#include <string>
#include <string_view>

#include "mee/model.hpp"

namespace mee {

struct Source {
    std::string text;
    std::filesystem::path dir;  // base for relative includes
};

// Reads a file, or standard input when path is "-".
Source read_source(const std::string& path);

Relation parse_relation(std::string_view text, const Limits& limits = {});
ConstraintLanguage parse_language(std::string_view text, const std::filesystem::path& dir = {},
                                  const Limits& limits = {});
CnfFormula parse_cnf(std::string_view text, const std::filesystem::path& dir = {}, const Limits& limits = {});
BoolFunction parse_function(std::string_view text);
Basis parse_basis(std::string_view text, const std::filesystem::path& dir = {});
BFormula parse_bformula(std::string_view text);
MeeInstance parse_instance(std::string_view text, const std::filesystem::path& dir = {}, const Limits& limits = {});
Dnf parse_dnf(std::string_view text);

ConstraintLanguage load_language(const std::string& path, const Limits& limits = {});
CnfFormula load_cnf(const std::string& path, const Limits& limits = {});
Basis load_basis(const std::string& path);
BFormula load_bformula(const std::string& path);
MeeInstance load_instance(const std::string& path, const Limits& limits = {});
Dnf load_dnf(const std::string& path);

std::string serialize(const Relation& r);
std::string serialize(const ConstraintLanguage& l);
// Relations are written inline so the output is self-contained.
std::string serialize(const CnfFormula& f);
std::string serialize(const BoolFunction& f);
std::string serialize(const Basis& b);
std::string serialize(const BFormula& f);
std::string serialize(const PostFormula& f);
std::string serialize(const MeeInstance& inst);
std::string serialize(const Dnf& dnf);

// Human-readable rendering for logs and reports, e.g. "or2(x,y) imp(y,z)".
std::string describe(const CnfFormula& f);

}  // namespace mee
