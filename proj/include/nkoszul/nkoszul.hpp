#pragma once

#include "nkoszul/algebra.hpp"
#include "nkoszul/bar.hpp"
#include "nkoszul/complex.hpp"
#include "nkoszul/errors.hpp"
#include "nkoszul/field.hpp"
#include "nkoszul/io.hpp"
#include "nkoszul/koszul.hpp"
#include "nkoszul/matrix.hpp"
#include "nkoszul/random.hpp"
#include "nkoszul/reduction.hpp"
#include "nkoszul/sparse.hpp"
#include "nkoszul/tensor.hpp"
