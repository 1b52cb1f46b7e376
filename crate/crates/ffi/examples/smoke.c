#include <math.h>
#include <stdio.h>

#include "lpsi.h"

int main(void) {
    LpsiFamily *f = NULL;
    if (lpsi_family_parse("harmlog:gamma=2,K1=exp(2)", &f) != LPSI_STATUS_OK) {
        char msg[256];
        lpsi_last_error_message(msg, sizeof msg);
        fprintf(stderr, "parse: %s\n", msg);
        return 1;
    }
    for (uint32_t th = 2; th <= 3; th++) {
        LpsiBracket b;
        LpsiStatus st = lpsi_theorem_bracket(f, th, INFINITY, 0.5, 8, 1e-10, &b);
        if (st != LPSI_STATUS_OK || !b.holds) {
            fprintf(stderr, "theorem %u failed with status %d\n", th, (int)st);
            lpsi_family_free(f);
            return 1;
        }
        printf("theorem %u  n=8  %.6e <= %.6e <= %.6e\n", th, b.lower, b.witness.value, b.upper);
    }
    lpsi_family_free(f);
    return 0;
}
