#ifndef MAGICFAB_CIRCUIT_IO_H
#define MAGICFAB_CIRCUIT_IO_H

#include <string>
#include <string_view>

#include "magicfab/circuit.h"

namespace magicfab {

/// Plain-text circuit form, one op per line:
///
///     magicfab-circuit 1
///     name ccz8
///     qubits 15
///     label 3 a
///     outputs 0 1 2
///     prep 0
///     reference 8 <re> <im> ...
///     gate X 3 4 5 6 ctrl !X11
///     gate PHASE(22.5) 2
///     measure X0 X3 Z4 if[0,1] if![2]
///     inject a 3 45
///     postselect [1,4,5]
///
/// Controls are `<axis><qubit>`, prefixed with `!` when the control fires on |0> (or |+>).
/// A condition `if[i,j]` holds when the XOR of the record bits is 1; `if![...]` negates it.
/// `postselect [..]` rejects the run when its parity is odd (`postselect ![..]` when even).
std::string circuit_to_text(const Circuit &circuit);

/// Inverse of circuit_to_text. Throws std::invalid_argument naming the offending line.
Circuit circuit_from_text(std::string_view text);

}  // namespace magicfab

#endif
