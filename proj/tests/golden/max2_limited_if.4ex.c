#include <assert.h>
#include <stdbool.h>

extern bool nd(void);

int I_0, I_1, I_2, I_3;
void Start(int x_0, int y_0, int x_1, int y_1, int x_2, int y_2, int x_3, int y_3);

void Start(int x_0, int y_0, int x_1, int y_1, int x_2, int y_2, int x_3, int y_3){
	if(nd()){  // Encodes "Start ::= (+ Start Start)"
		Start(x_0, y_0, x_1, y_1, x_2, y_2, x_3, y_3);
		int tempL_0 = I_0; int tempL_1 = I_1; int tempL_2 = I_2; int tempL_3 = I_3;
		Start(x_0, y_0, x_1, y_1, x_2, y_2, x_3, y_3);
		int tempR_0 = I_0; int tempR_1 = I_1; int tempR_2 = I_2; int tempR_3 = I_3;
		I_0 = tempL_0 + tempR_0;
		I_1 = tempL_1 + tempR_1;
		I_2 = tempL_2 + tempR_2;
		I_3 = tempL_3 + tempR_3;
	}
	else if(nd()){  // Encodes "Start ::= x"
		I_0 = x_0;
		I_1 = x_1;
		I_2 = x_2;
		I_3 = x_3;
	}
	else if(nd()){  // Encodes "Start ::= y"
		I_0 = y_0;
		I_1 = y_1;
		I_2 = y_2;
		I_3 = y_3;
	}
	else if(nd()){  // Encodes "Start ::= 1"
		I_0 = 1;
		I_1 = 1;
		I_2 = 1;
		I_3 = 1;
	}
	else {  // Encodes "Start ::= 0"
		I_0 = 0;
		I_1 = 0;
		I_2 = 0;
		I_3 = 0;
	}
}

bool spec(int x, int y, int f){
	return (((f >= x) && (f >= y) && ((f == x) || (f == y))));
}

int main(void){
	int x_0 = 0; int y_0 = 0;  // Input example (0,0)
	int x_1 = 0; int y_1 = 1;  // Input example (0,1)
	int x_2 = 1; int y_2 = 0;  // Input example (1,0)
	int x_3 = 1; int y_3 = 1;  // Input example (1,1)
	Start(x_0, y_0, x_1, y_1, x_2, y_2, x_3, y_3);
	assert(!spec(x_0,y_0,I_0) || !spec(x_1,y_1,I_1) || !spec(x_2,y_2,I_2) || !spec(x_3,y_3,I_3));  // At least one example fails
	return 0;
}
