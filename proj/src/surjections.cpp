namespace symjoin {}
