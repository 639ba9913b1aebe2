#pragma once

#include "spinvol/errors.hpp"
#include "spinvol/half_int.hpp"
#include "spinvol/rational.hpp"
#include "spinvol/factorial_product.hpp"
#include "spinvol/triad.hpp"
#include "spinvol/radical_value.hpp"
#include "spinvol/sixj.hpp"
#include "spinvol/sixj_sweep.hpp"
#include "spinvol/cg_oracle.hpp"
#include "spinvol/regge.hpp"
#include "spinvol/geometry.hpp"
#include "spinvol/parallel.hpp"
#include "spinvol/screen.hpp"
#include "spinvol/volume.hpp"
#include "spinvol/volume_oracle.hpp"
#include "spinvol/identities.hpp"
