from mpmath import mp

# Library code manages its own working precision via workprec; raise the
# ambient precision so that test-side arithmetic on returned values does not
# round below the tolerances being asserted.
mp.prec = 400
