# gausscap: Gaussian channel capacities and a Fock-space oracle
