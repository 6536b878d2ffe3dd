# optlim utils package
