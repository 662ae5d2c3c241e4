#pragma once

#include "basis.hpp"
#include "chain.hpp"
#include "cohomology.hpp"
#include "couplings.hpp"
#include "cut_paste.hpp"
#include "double_complex.hpp"
#include "hamiltonian.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "rational.hpp"
#include "sparse.hpp"
#include "supercharge.hpp"
#include "theory_oracle.hpp"
#include "verify.hpp"
