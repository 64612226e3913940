/* The public header must compile as C and the library must be usable from C. */
#include <math.h>
#include <stdio.h>

#include "infolattice/infolattice.h"

int main(void) {
  il_distribution* d = NULL;
  const char* csv = "x,y,p\n0,0,0.5\n1,1,0.5\n";
  if (il_distribution_load_text(csv, IL_INPUT_CSV, &d) != IL_OK) {
    fprintf(stderr, "%s\n", il_last_error());
    return 1;
  }
  const uint32_t sources[2] = {1u, 2u};
  const uint32_t r[2] = {0, 0};
  double v = 0.0;
  il_status s = il_pointwise(d, IL_MUTUAL, sources, 2, 0, r, 2, IL_BITS, &v);
  il_distribution_free(d);
  if (s != IL_OK || fabs(v - 1.0) > 1e-12) return 1;
  puts("ok");
  return 0;
}
