#ifndef EPATLAS_EXPR_HPP
#define EPATLAS_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "epatlas/types.hpp"

namespace epatlas::expr {

enum class NodeKind {
  Number,      // real literal
  ImagUnit,    // the constant i
  Identifier,  // k_x, k_y, k_z or a named parameter
  Neg,         // unary minus
  Add,
  Sub,
  Mul,
  Div,
  Pow,   // integer exponent, stored in Node::exponent
  Call,  // sin cos exp sqrt conj re im
};

struct Node;
using Ast = std::shared_ptr<const Node>;

struct Node {
  NodeKind kind;
  double value = 0.0;         // Number
  std::string name;           // Identifier / Call
  long exponent = 0;          // Pow
  Ast lhs;                    // unary operand / left operand / call argument
  Ast rhs;                    // right operand
};

class ParseError : public EpAtlasError {
 public:
  ParseError(size_t offset, const std::string& message,
             std::vector<std::string> expected);
  size_t offset;
  std::vector<std::string> expected;
};

class EvalError : public EpAtlasError {
 public:
  explicit EvalError(const std::string& message,
                     std::vector<std::string> unbound = {});
  std::vector<std::string> unbound;
};

// Recursive-descent parse of the scalar expression grammar. Precedence, from
// loosest: + -  |  * /  |  unary -  |  ^ (right-assoc, constant integer
// exponents only)  |  atoms. Throws ParseError with a byte offset.
Ast parse(const std::string& src);

// Unparse; parse(print(ast)) reproduces the tree node for node.
std::string print(const Ast& ast);

// Structural equality (used by the round-trip property).
bool equal(const Ast& a, const Ast& b);

// Names of free identifiers in the tree.
std::vector<std::string> free_identifiers(const Ast& ast);

// Evaluate with the given bindings. Unbound identifiers or a non-finite
// result raise EvalError.
Complex evaluate(const Ast& ast, const std::map<std::string, Complex>& bindings);

}  // namespace epatlas::expr

#endif
