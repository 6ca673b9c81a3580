from charstack.cli import main_entry

main_entry()
