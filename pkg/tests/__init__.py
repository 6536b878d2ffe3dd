# optlim tests package
