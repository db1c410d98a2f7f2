# Core framework modules: configuration, errors, report emission
