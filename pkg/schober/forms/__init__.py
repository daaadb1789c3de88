from .forms import parse_flop, parse_path_word, parse_weights, validate_options

__all__ = ['parse_flop', 'parse_path_word', 'parse_weights', 'validate_options']
