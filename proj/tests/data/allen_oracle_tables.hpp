// Generated by tests/oracles/allen_oracle.py. Do not edit.
#pragma once

// Row = relation(A,B), column = relation(B,C), symbols in canonical order.
inline constexpr const char* kAllenOracle[13][13] = {
    {"b", "b", "b", "b", "b m o s d", "b m o s d", "b", "b", "b", "b", "b m o s d", "b m o s d", "b m o s d f eq fi di si oi mi bi"},  // b
    {"b", "b", "b", "m", "o s d", "o s d", "m", "b", "b", "m", "o s d", "f eq fi", "di si oi mi bi"},  // m
    {"b", "b", "b m o", "o", "o s d", "o s d", "o", "b m o", "b m o fi di", "o fi di", "o s d f eq fi di si oi", "di si oi", "di si oi mi bi"},  // o
    {"b", "b", "b m o", "s", "d", "d", "s", "b m o", "b m o fi di", "s eq si", "d f oi", "mi", "bi"},  // s
    {"b", "b", "b m o s d", "d", "d", "d", "d", "b m o s d", "b m o s d f eq fi di si oi mi bi", "d f oi mi bi", "d f oi mi bi", "bi", "bi"},  // d
    {"b", "m", "o s d", "d", "d", "f", "f", "f eq fi", "di si oi mi bi", "oi mi bi", "oi mi bi", "bi", "bi"},  // f
    {"b", "m", "o", "s", "d", "f", "eq", "fi", "di", "si", "oi", "mi", "bi"},  // eq
    {"b", "m", "o", "o", "o s d", "f eq fi", "fi", "fi", "di", "di", "di si oi", "di si oi", "di si oi mi bi"},  // fi
    {"b m o fi di", "o fi di", "o fi di", "o fi di", "o s d f eq fi di si oi", "di si oi", "di", "di", "di", "di", "di si oi", "di si oi", "di si oi mi bi"},  // di
    {"b m o fi di", "o fi di", "o fi di", "s eq si", "d f oi", "oi", "si", "di", "di", "si", "oi", "mi", "bi"},  // si
    {"b m o fi di", "o fi di", "o s d f eq fi di si oi", "d f oi", "d f oi", "oi", "oi", "di si oi", "di si oi mi bi", "oi mi bi", "oi mi bi", "bi", "bi"},  // oi
    {"b m o fi di", "s eq si", "d f oi", "d f oi", "d f oi", "mi", "mi", "mi", "bi", "bi", "bi", "bi", "bi"},  // mi
    {"b m o s d f eq fi di si oi mi bi", "d f oi mi bi", "d f oi mi bi", "d f oi mi bi", "d f oi mi bi", "bi", "bi", "bi", "bi", "bi", "bi", "bi", "bi"},  // bi
};

// Labels: before after equal vague
inline constexpr const char* kOracleFour[4][4] = {
    {"before", "before after equal vague", "before", "before after equal vague"},  // before
    {"before after equal vague", "after", "after", "before after equal vague"},  // after
    {"before", "after", "equal", "before after equal vague"},  // equal
    {"before after equal vague", "before after equal vague", "before after equal vague", "before after equal vague"},  // vague
};

// Labels: before after equal vague includes is_included
inline constexpr const char* kOracleSix[6][6] = {
    {"before", "before after equal vague includes is_included", "before", "before after equal vague includes is_included", "before", "before vague is_included"},  // before
    {"before after equal vague includes is_included", "after", "after", "before after equal vague includes is_included", "after", "after vague is_included"},  // after
    {"before", "after", "equal", "before after equal vague includes is_included", "includes", "is_included"},  // equal
    {"before after equal vague includes is_included", "before after equal vague includes is_included", "before after equal vague includes is_included", "before after equal vague includes is_included", "before after equal vague includes is_included", "before after equal vague includes is_included"},  // vague
    {"before vague includes", "after vague includes", "includes", "before after equal vague includes is_included", "includes", "equal vague includes is_included"},  // includes
    {"before", "after", "is_included", "before after equal vague includes is_included", "before after equal vague includes is_included", "is_included"},  // is_included
};
