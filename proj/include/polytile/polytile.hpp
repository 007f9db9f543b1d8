#pragma once

#include "polytile/bits.hpp"
#include "polytile/certificate.hpp"
#include "polytile/chipfire.hpp"
#include "polytile/error.hpp"
#include "polytile/field.hpp"
#include "polytile/io.hpp"
#include "polytile/linked_net.hpp"
#include "polytile/matrix.hpp"
#include "polytile/parallel.hpp"
#include "polytile/quiver.hpp"
#include "polytile/setfn.hpp"
#include "polytile/subspace.hpp"
#include "polytile/subspace_polytopes.hpp"
#include "polytile/tiling.hpp"
