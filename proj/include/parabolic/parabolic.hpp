#pragma once

#include "certificates.hpp"
#include "classifier.hpp"
#include "errors.hpp"
#include "flows.hpp"
#include "io.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "series.hpp"
